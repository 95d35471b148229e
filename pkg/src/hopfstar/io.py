"""
JSON definition files and the workspace registry that resolves references
between them.

Every file is a JSON object with a ``kind`` and a ``name``.  Scalars are
strings in the scalar text form; rationals are written canonically as
``p/q`` (q > 0, reduced) or ``p``.  Serialization sorts keys and indents by
two spaces, so parse -> serialize reproduces a canonical file byte for byte.

Kinds and their keys:

    algebra         dim, mult, unit, coprod, counit, antipode, star, scalar_order
    module          algebra, dim, action
    map             domain, codomain, matrix
    star            module, matrix
    gram            module, matrix
    form            module, matrix
    rmatrix         algebra, coeffs, inverse
    module-algebra  carrier, mult, unit

A reference is the ``name`` of another object in the same workspace, or
``fixture:<fixture>`` / ``fixture:<fixture>/<module>`` for shipped objects.
"""

import json
from importlib import resources
from pathlib import Path

from .braid import RMatrix
from .errors import DimensionMismatch, ParseError, ReferenceError
from .hmod import HModule, ModuleMap
from .hopf import HopfStarAlgebra
from .linalg import Matrix
from .scalar import parse_scalar, scalar_text
from .staralg import ModuleAlgebra, StarStructure

__all__ = [
    "KINDS",
    "scalar_text",
    "dumps",
    "loads",
    "parse_document",
    "serialize",
    "Workspace",
    "canonical_text",
    "roundtrip_mismatches",
    "export_bundle",
    "shipped_dir",
    "shipped_workspaces",
    "workspace_dir_name",
]

KINDS = ("algebra", "module", "map", "star", "gram", "form", "rmatrix", "module-algebra")

_REQUIRED = {
    "algebra": ("dim", "mult", "unit", "coprod", "counit", "antipode", "star", "scalar_order"),
    "module": ("algebra", "dim", "action"),
    "map": ("domain", "codomain", "matrix"),
    "star": ("module", "matrix"),
    "gram": ("module", "matrix"),
    "form": ("module", "matrix"),
    "rmatrix": ("algebra", "coeffs", "inverse"),
    "module-algebra": ("carrier", "mult", "unit"),
}


def _mat_out(M):
    return [[scalar_text(v) for v in row] for row in M.rows]


def _vec_out(v):
    return [scalar_text(a) for a in v]


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


class _Located:
    """Parsed JSON plus the raw text, so semantic errors can report a position."""

    def __init__(self, text, source):
        self.text = text
        self.source = source

    def error(self, message, token=None):
        line = column = None
        if token is not None:
            needle = json.dumps(token, ensure_ascii=False)
            pos = self.text.find(needle)
            if pos >= 0:
                line = self.text.count("\n", 0, pos) + 1
                column = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        if line is None:
            line, column = 1, 1
        prefix = f"{self.source}: " if self.source else ""
        return ParseError(prefix + message, line, column)


def loads(text, source=None):
    """JSON text to a dict, with ParseError carrying line and column."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        prefix = f"{source}: " if source else ""
        raise ParseError(prefix + e.msg, e.lineno, e.colno) from None
    loc = _Located(text, source)
    if not isinstance(doc, dict):
        raise loc.error("top level must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise loc.error(f"unknown kind {kind!r}", "kind")
    if not isinstance(doc.get("name"), str) or not doc["name"]:
        raise loc.error("missing or empty name", "name")
    for key in _REQUIRED[kind]:
        if key not in doc:
            raise loc.error(f"{kind} file lacks key {key!r}", "kind")
    extra = set(doc) - set(_REQUIRED[kind]) - {"kind", "name"}
    if extra:
        raise loc.error(f"unexpected keys {sorted(extra)}", sorted(extra)[0])
    doc["_loc"] = loc
    return doc


def _scalar(loc, x):
    try:
        return parse_scalar(x)
    except ParseError as e:
        raise loc.error(str(e), x if isinstance(x, str) else None) from None


def _vector(loc, x, key):
    if not isinstance(x, list):
        raise loc.error(f"{key} must be a list", key)
    return tuple(_scalar(loc, v) for v in x)


def _matrix(loc, x, key, shape=None):
    if not isinstance(x, list) or not all(isinstance(r, list) for r in x):
        raise loc.error(f"{key} must be a list of rows", key)
    rows = [_vector(loc, r, key) for r in x]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise loc.error(f"{key} has rows of different lengths", key)
    M = Matrix(rows) if rows else Matrix.zeros(0, 0)
    if shape is not None and M.shape != shape:
        raise loc.error(f"{key} is {M.shape[0]}x{M.shape[1]}, expected {shape[0]}x{shape[1]}", key)
    return M


def _int(loc, x, key):
    if not isinstance(x, int) or isinstance(x, bool) or x < 0:
        raise loc.error(f"{key} must be a non-negative integer", key)
    return x


def _ref(loc, x, key):
    if not isinstance(x, str) or not x:
        raise loc.error(f"{key} must be a reference name", key)
    return x


# -- per-kind builders ----------------------------------------------------


def _build_algebra(doc, ws):
    loc = doc["_loc"]
    d = _int(loc, doc["dim"], "dim")
    mult = doc["mult"]
    if not isinstance(mult, list) or len(mult) != d:
        raise loc.error(f"mult must hold {d} rows", "mult")
    grid = [[_vector(loc, v, "mult") for v in _rows(loc, row, "mult", d)] for row in mult]
    coprod = []
    if not isinstance(doc["coprod"], list) or len(doc["coprod"]) != d:
        raise loc.error(f"coprod must hold {d} grids", "coprod")
    for g in doc["coprod"]:
        M = _matrix(loc, g, "coprod", (d, d))
        coprod.append([(v, j, k) for j, k, v in M.nonzero_entries()])
    try:
        return HopfStarAlgebra(
            dim=d,
            mult=grid,
            unit=_vector(loc, doc["unit"], "unit"),
            coprod=coprod,
            counit=_vector(loc, doc["counit"], "counit"),
            antipode=_matrix(loc, doc["antipode"], "antipode", (d, d)),
            star=_matrix(loc, doc["star"], "star", (d, d)),
            scalar_order=_int(loc, doc["scalar_order"], "scalar_order"),
            name=doc["name"],
        )
    except DimensionMismatch as e:
        raise loc.error(str(e)) from None


def _rows(loc, row, key, d):
    if not isinstance(row, list) or len(row) != d:
        raise loc.error(f"{key} rows must have length {d}", key)
    return row


def _build_module(doc, ws):
    loc = doc["_loc"]
    H = ws.resolve(doc["algebra"], "algebra", loc)
    n = _int(loc, doc["dim"], "dim")
    action = doc["action"]
    if not isinstance(action, list) or len(action) != H.dim:
        raise loc.error(f"action must hold {H.dim} matrices", "action")
    mats = [_matrix(loc, a, "action", (n, n)) for a in action]
    return HModule(H, mats, doc["name"])


def _build_map(doc, ws):
    loc = doc["_loc"]
    V = ws.resolve(doc["domain"], "module", loc)
    W = ws.resolve(doc["codomain"], "module", loc)
    return ModuleMap(V, W, _matrix(loc, doc["matrix"], "matrix", (W.dim, V.dim)), doc["name"])


def _build_on_module(doc, ws):
    loc = doc["_loc"]
    V = ws.resolve(doc["module"], "module", loc)
    return V, _matrix(loc, doc["matrix"], "matrix", (V.dim, V.dim))


def _build_star(doc, ws):
    V, D = _build_on_module(doc, ws)
    return StarStructure(V, D, doc["name"])


def _build_gram(doc, ws):
    from .inner import InnerProduct

    V, G = _build_on_module(doc, ws)
    return InnerProduct(V, G, doc["name"])


def _build_form(doc, ws):
    from .inner import InnerProduct

    V, h = _build_on_module(doc, ws)
    return InnerProduct(V, h, doc["name"])


def _build_rmatrix(doc, ws):
    loc = doc["_loc"]
    H = ws.resolve(doc["algebra"], "algebra", loc)
    d = H.dim
    return RMatrix(H, _matrix(loc, doc["coeffs"], "coeffs", (d, d)), _matrix(loc, doc["inverse"], "inverse", (d, d)), doc["name"])


def _build_module_algebra(doc, ws):
    loc = doc["_loc"]
    V = ws.resolve(doc["carrier"], "module", loc)
    M = _matrix(loc, doc["mult"], "mult", (V.dim, V.dim * V.dim))
    unit = _vector(loc, doc["unit"], "unit")
    if len(unit) != V.dim:
        raise loc.error(f"unit must have length {V.dim}", "unit")
    return ModuleAlgebra(V, M, unit, doc["name"])


_BUILDERS = {
    "algebra": _build_algebra,
    "module": _build_module,
    "map": _build_map,
    "star": _build_star,
    "gram": _build_gram,
    "form": _build_form,
    "rmatrix": _build_rmatrix,
    "module-algebra": _build_module_algebra,
}


def parse_document(text, workspace=None, source=None):
    """Parse one file into (kind, object), resolving references in workspace."""
    doc = loads(text, source)
    ws = workspace if workspace is not None else Workspace()
    return doc["kind"], _BUILDERS[doc["kind"]](doc, ws)


# -- serialization --------------------------------------------------------


def serialize(kind, obj, refs=None):
    """Canonical file text.  refs maps referenced objects (by id) to names."""
    refs = refs or {}

    def ref(o):
        return refs.get(id(o), getattr(o, "name", None))

    if kind == "algebra":
        H = obj
        d = H.dim
        coprod = []
        for i in range(d):
            grid = [[scalar_text(H.D[j * d + k, i]) for k in range(d)] for j in range(d)]
            coprod.append(grid)
        doc = {
            "dim": d,
            "mult": [[_vec_out(v) for v in row] for row in H.mult],
            "unit": _vec_out(H.unit),
            "coprod": coprod,
            "counit": _vec_out(H.counit),
            "antipode": _mat_out(H.antipode),
            "star": _mat_out(H.star),
            "scalar_order": H.scalar_order,
        }
    elif kind == "module":
        doc = {"algebra": ref(obj.algebra), "dim": obj.dim, "action": [_mat_out(a) for a in obj.action]}
    elif kind == "map":
        doc = {"domain": ref(obj.domain), "codomain": ref(obj.codomain), "matrix": _mat_out(obj.matrix)}
    elif kind == "star":
        doc = {"module": ref(obj.module), "matrix": _mat_out(obj.D)}
    elif kind in ("gram", "form"):
        doc = {"module": ref(obj.module), "matrix": _mat_out(obj.G)}
    elif kind == "rmatrix":
        doc = {"algebra": ref(obj.algebra), "coeffs": _mat_out(obj.coeffs), "inverse": _mat_out(obj.inverse)}
    elif kind == "module-algebra":
        doc = {"carrier": ref(obj.carrier), "mult": _mat_out(obj.M), "unit": _vec_out(obj.unit)}
    else:
        raise ValueError(f"unknown kind {kind!r}")
    doc["kind"] = kind
    doc["name"] = obj.name
    return dumps(doc)


# -- workspace ------------------------------------------------------------


class Workspace:
    """
    Named registry of objects loaded from a directory of JSON files.

    Files are indexed by name on first use and built lazily, so a file is
    only parsed when it (or something referring to it) is requested.
    """

    def __init__(self, root=None):
        self.root = Path(root) if root is not None else None
        self.objects = {}
        self.kinds = {}
        self._index = None
        self._building = set()

    @classmethod
    def load(cls, root):
        """Build every file under root; any failure is raised."""
        ws = cls(root)
        if not ws.root.is_dir():
            raise ReferenceError(f"workspace {root} is not a directory")
        for name in sorted(ws.index()):
            ws.get(name)
        return ws

    def index(self):
        if self._index is None:
            self._index = {}
            if self.root is not None and self.root.is_dir():
                for path in sorted(self.root.glob("*.json")):
                    text = path.read_text()
                    doc = loads(text, str(path))
                    if doc["name"] in self._index:
                        raise doc["_loc"].error(f"duplicate name {doc['name']!r}", "name")
                    self._index[doc["name"]] = (doc["kind"], doc)
        return self._index

    def register(self, kind, obj, name=None):
        name = name or obj.name
        self.objects[name] = obj
        self.kinds[name] = kind
        return obj

    def get(self, name):
        if name in self.objects:
            return self.objects[name]
        if name.startswith("fixture:"):
            return self._fixture_ref(name)
        idx = self.index()
        if name not in idx:
            raise ReferenceError(f"no object named {name!r}")
        if name in self._building:
            raise ReferenceError(f"circular reference through {name!r}")
        kind, doc = idx[name]
        self._building.add(name)
        try:
            obj = _BUILDERS[kind](doc, self)
        finally:
            self._building.discard(name)
        return self.register(kind, obj, name)

    def kind_of(self, name):
        if name not in self.kinds:
            self.get(name)
        return self.kinds[name]

    def resolve(self, name, kind, loc=None):
        if loc is not None:
            name = _ref(loc, name, kind)
        try:
            obj = self.get(name)
        except ReferenceError as e:
            if loc is not None:
                raise ReferenceError(f"{loc.source or '<input>'}: {e}") from None
            raise
        if self.kinds[name] != kind:
            raise ReferenceError(f"{name!r} is a {self.kinds[name]}, expected {'an' if kind[0] in 'aeiou' else 'a'} {kind}")
        return obj

    def _fixture_ref(self, ref):
        from .errors import UnknownFixture
        from .fixtures import fixture

        body = ref[len("fixture:"):]
        fname, _, key = body.partition("/")
        try:
            b = fixture(fname)
        except UnknownFixture as e:
            raise ReferenceError(str(e)) from None
        if not key:
            return self.register("algebra", b.algebra, ref)
        if key in b.modules:
            return self.register("module", b.modules[key], ref)
        raise ReferenceError(f"fixture {fname} has no module {key!r}")

    def names(self, kind=None):
        self.index()
        names = set(self.objects) | set(self._index)
        return sorted(n for n in names if kind is None or self.kind_of(n) == kind)

    def bundles(self):
        """Group the registry into one Bundle per algebra."""
        from .fixtures import Bundle

        out = {}
        for name in self.names("algebra"):
            out[name] = Bundle(name, self.get(name))
        for name in self.names():
            obj = self.get(name)
            kind = self.kinds[name]
            if kind == "module":
                b = self._owner(out, obj.algebra)
                b.modules[name] = obj
            elif kind == "star":
                self._owner(out, obj.module.algebra).stars[self._module_key(obj.module)] = obj.D
            elif kind == "gram":
                self._owner(out, obj.module.algebra).grams[self._module_key(obj.module)] = obj.G
            elif kind == "rmatrix":
                self._owner(out, obj.algebra).rmatrices[name] = obj
        return list(out.values())

    @staticmethod
    def _owner(bundles, H):
        for b in bundles.values():
            if b.algebra is H:
                return b
        raise ReferenceError(f"algebra {H.name!r} is not registered in the workspace")

    def _module_key(self, V):
        for n, o in self.objects.items():
            if o is V:
                return n
        raise ReferenceError(f"module {V.name!r} is not registered in the workspace")


def canonical_text(ws, name):
    """Re-serialize a workspace object, naming its references as the workspace does."""
    refs = {id(o): n for n, o in ws.objects.items()}
    return serialize(ws.kind_of(name), ws.get(name), refs)


def roundtrip_mismatches(root):
    """Files under root whose canonical re-serialization differs byte for byte."""
    ws = Workspace.load(root)
    bad = []
    for name in ws.names():
        _, doc = ws.index()[name]
        text = Path(doc["_loc"].source).read_text()
        if canonical_text(ws, name) != text:
            bad.append(doc["_loc"].source)
    return bad


# -- shipped fixtures -----------------------------------------------------


def workspace_dir_name(fixture_name):
    """group_z2 -> group_z2, sweedler(-2) -> sweedler_m2."""
    from .fixtures import parse_fixture_name

    kind, arg = parse_fixture_name(fixture_name)
    if kind == "trivial":
        return "trivial"
    if kind == "group_zn":
        return f"group_z{arg}"
    return "sweedler_" + str(arg).replace("-", "m").replace("/", "_")


def shipped_dir():
    return Path(str(resources.files("hopfstar") / "data"))


def shipped_workspaces():
    root = shipped_dir()
    return sorted(p for p in root.iterdir() if p.is_dir()) if root.is_dir() else []


def export_bundle(bundle, directory):
    """Write a bundle as a workspace directory; returns the written paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    H = bundle.algebra
    aname = H.name
    refs = {id(H): aname}
    files = [(f"{aname}.algebra.json", serialize("algebra", H, refs))]
    for key, V in bundle.modules.items():
        refs[id(V)] = key
        mod = HModule(H, V.action, key)
        files.append((f"{key}.module.json", serialize("module", mod, refs)))
    for key, D in bundle.stars.items():
        s = StarStructure(bundle.modules[key], D, f"{key}.star")
        files.append((f"{key}.star.json", serialize("star", s, refs)))
    for key, G in bundle.grams.items():
        from .inner import InnerProduct

        g = InnerProduct(bundle.modules[key], G, f"{key}.gram")
        files.append((f"{key}.gram.json", serialize("gram", g, refs)))
    for key, R in bundle.rmatrices.items():
        r = RMatrix(H, R.coeffs, R.inverse, key)
        files.append((f"{key}.rmatrix.json", serialize("rmatrix", r, refs)))
    paths = []
    for fname, text in files:
        p = directory / fname
        p.write_text(text)
        paths.append(p)
    return paths

