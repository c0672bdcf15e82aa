"""Lie superalgebras given by an ordered homogeneous basis and structure constants."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .errors import InvalidAlgebra
from .fields import ONE, ZERO, Q, format_scalar
from .linalg import Echelon, nullspace, vec_add

EVEN, ODD = 0, 1

FORMAT_NAME = "ghostcalc-algebra"
FORMAT_VERSION = 1


@dataclass(frozen=True)
class BasisVector:
    index: int
    name: str
    parity: int
    z_degree: int = 0
    weight: tuple | None = None

    @property
    def is_odd(self) -> bool:
        return self.parity == ODD


@dataclass
class ValidationReport:
    algebra: str
    antisymmetry: list = field(default_factory=list)
    jacobi: list = field(default_factory=list)
    parity: list = field(default_factory=list)
    weights: list = field(default_factory=list)
    z_grading: list = field(default_factory=list)
    form: list = field(default_factory=list)
    checked_pairs: int = 0
    checked_triples: int = 0

    @property
    def ok(self) -> bool:
        return not (self.antisymmetry or self.jacobi or self.parity or self.weights
                    or self.z_grading or self.form)

    def failures(self) -> dict:
        return {k: getattr(self, k) for k in
                ("antisymmetry", "jacobi", "parity", "weights", "z_grading", "form")
                if getattr(self, k)}

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "ok": self.ok,
            "checked_pairs": self.checked_pairs,
            "checked_triples": self.checked_triples,
            "failures": {k: [str(x) for x in v] for k, v in self.failures().items()},
        }


class LieSuperalgebra:
    """Immutable structure-constant description of a finite-dimensional Lie superalgebra.

    ``brackets`` maps ordered index pairs to sparse coefficient dicts.  Pairs
    missing from the table whose mirror is present are filled in by
    super-antisymmetry; pairs present in both orders are kept as given so that
    inconsistent tables are caught by :func:`validate_algebra`.
    """

    def __init__(self, name, basis, brackets, cartan_even=(), cartan_odd=(), form=None,
                 family=None, params=(), positivity=None, representation=None):
        self.name = name
        self.basis = tuple(basis)
        self.family = family
        self.params = tuple(params)
        self.cartan_even = tuple(cartan_even)
        self.cartan_odd = tuple(cartan_odd)
        self.form = None if form is None else tuple(tuple(Q(x) for x in row) for row in form)
        self.positivity = None if positivity is None else tuple(Q(x) for x in positivity)
        # optional faithful supermatrix representation: (even_dim, odd_dim, [sparse matrices])
        self.representation = representation
        br = {}
        for (i, j), vec in brackets.items():
            clean = {k: Q(v) for k, v in vec.items() if v != 0}
            if clean:
                br[(i, j)] = clean
        for (i, j), vec in list(br.items()):
            if (j, i) not in br and (j, i) not in brackets:
                sign = -1 if (self.basis[i].is_odd and self.basis[j].is_odd) else 1
                br[(j, i)] = {k: -sign * v for k, v in vec.items()}
        self._br = br
        self._by_name = {b.name: b.index for b in self.basis}
        if len(self._by_name) != len(self.basis):
            raise InvalidAlgebra(f"duplicate basis names in {name}")
        for i, b in enumerate(self.basis):
            if b.index != i:
                raise InvalidAlgebra("basis indices must be 0..dim-1 in order")
        self._uea_cache = {}
        self._derived = {}

    # -- basic accessors -------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def names(self) -> tuple:
        return tuple(b.name for b in self.basis)

    def index(self, name: str) -> int:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"{self.name} has no basis element {name!r}") from None

    def has_name(self, name: str) -> bool:
        return name in self._by_name

    def parity(self, i: int) -> int:
        return self.basis[i].parity

    def is_odd(self, i: int) -> bool:
        return self.basis[i].parity == ODD

    @property
    def even_indices(self) -> tuple:
        return tuple(b.index for b in self.basis if b.parity == EVEN)

    @property
    def odd_indices(self) -> tuple:
        return tuple(b.index for b in self.basis if b.parity == ODD)

    def z_block(self, d: int) -> tuple:
        return tuple(b.index for b in self.basis if b.z_degree == d)

    @property
    def g_minus(self) -> tuple:
        return self.z_block(-1)

    @property
    def g_plus(self) -> tuple:
        return self.z_block(1)

    @property
    def is_type_one(self) -> bool:
        odd = self.odd_indices
        return bool(odd) and all(self.basis[i].z_degree in (-1, 1) for i in odd) and all(
            b.z_degree == 0 for b in self.basis if b.parity == EVEN) and bool(self.g_minus) and bool(self.g_plus)

    @property
    def has_weights(self) -> bool:
        return all(b.weight is not None for b in self.basis)

    @property
    def cartan_names(self) -> tuple:
        return tuple(self.basis[i].name for i in self.cartan_even)

    def bracket(self, i: int, j: int) -> dict:
        return self._br.get((i, j), {})

    def bracket_table(self) -> dict:
        return dict(self._br)

    def bracket_vec(self, u: dict, v: dict) -> dict:
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                br = self._br.get((i, j))
                if br:
                    vec_add(out, br, a * b)
        return out

    def vec_parity(self, v: dict):
        ps = {self.parity(i) for i in v}
        if not ps:
            return EVEN
        return ps.pop() if len(ps) == 1 else None

    # -- derived data ----------------------------------------------------
    def centralizer_of_cartan(self) -> list[dict]:
        """Basis of the centralizer of the even Cartan part, as sparse vectors."""
        rows = []
        for h in self.cartan_even:
            # the linear map v -> [h, v]; one equation per output coordinate
            cols: dict[int, dict] = {}
            for j in range(self.dim):
                for k, x in self.bracket(h, j).items():
                    cols.setdefault(k, {})[j] = x
            rows.extend(cols.values())
        return nullspace(rows, self.dim)

    @property
    def is_cartan_even(self) -> bool:
        if "cartan_even_flag" not in self._derived:
            flag = False
            if not self.cartan_odd:
                cent = self.centralizer_of_cartan()
                span = Echelon()
                for h in self.cartan_even:
                    span.add({h: ONE})
                flag = len(cent) == len(self.cartan_even) and all(span.contains(v) for v in cent)
            self._derived["cartan_even_flag"] = flag
        return self._derived["cartan_even_flag"]

    def cartan_form(self):
        """Gram matrix of the invariant form on the even Cartan basis."""
        if self.form is None:
            return None
        return tuple(tuple(self.form[i][j] for j in self.cartan_even) for i in self.cartan_even)

    def form_value(self, u: dict, v: dict):
        if self.form is None:
            raise ValueError(f"{self.name} carries no invariant form")
        total = ZERO
        for i, a in u.items():
            for j, b in v.items():
                x = self.form[i][j]
                if x != 0:
                    total = total + a * b * x
        return total

    # -- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        entries = []
        for (i, j) in sorted(self._br):
            vec = self._br[(i, j)]
            entries.append([i, j, {str(k): format_scalar(v) for k, v in sorted(vec.items())}])
        doc = {
            "format": FORMAT_NAME,
            "version": FORMAT_VERSION,
            "name": self.name,
            "basis": [
                {
                    "name": b.name,
                    "parity": "odd" if b.is_odd else "even",
                    "z_degree": b.z_degree,
                    "weight": None if b.weight is None else [format_scalar(w) for w in b.weight],
                }
                for b in self.basis
            ],
            "brackets": entries,
            "cartan_even": list(self.cartan_even),
            "cartan_odd": list(self.cartan_odd),
        }
        if self.form is not None:
            doc["form"] = [[format_scalar(x) for x in row] for row in self.form]
        if self.positivity is not None:
            doc["positivity"] = [format_scalar(x) for x in self.positivity]
        return doc

    def fingerprint(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    @classmethod
    def from_json(cls, doc: dict, validate: bool = True) -> "LieSuperalgebra":
        if doc.get("format") != FORMAT_NAME:
            raise InvalidAlgebra(f"not a {FORMAT_NAME} document")
        if doc.get("version") != FORMAT_VERSION:
            raise InvalidAlgebra(f"unsupported structure-constant version {doc.get('version')!r}")
        basis = []
        for i, b in enumerate(doc["basis"]):
            parity = {"even": EVEN, "odd": ODD, 0: EVEN, 1: ODD}[b["parity"]]
            w = b.get("weight")
            basis.append(BasisVector(i, b["name"], parity, int(b.get("z_degree", 0)),
                                     None if w is None else tuple(Q(x) for x in w)))
        brackets = {}
        for i, j, vec in doc["brackets"]:
            brackets[(int(i), int(j))] = {int(k): Q(v) for k, v in vec.items()}
        g = cls(doc.get("name", "custom"), basis, brackets,
                cartan_even=doc.get("cartan_even", ()), cartan_odd=doc.get("cartan_odd", ()),
                form=doc.get("form"), family="custom", positivity=doc.get("positivity"))
        if validate:
            report = validate_algebra(g)
            if not report.ok:
                raise InvalidAlgebra(f"structure constants of {g.name} fail validation", report)
        return g

    # -- enveloping algebra contexts ---------------------------------------
    def uea(self, ordering):
        from .pbw import UEA, Ordering

        if not isinstance(ordering, Ordering):
            ordering = Ordering(self, ordering)
        key = ordering.sequence
        ctx = self._uea_cache.get(key)
        if ctx is None:
            ctx = UEA(ordering)
            self._uea_cache[key] = ctx
        return ctx

    def __repr__(self):
        return f"LieSuperalgebra({self.name}, dim={self.dim})"


def compute_weights(basis, brackets, cartan_even):
    """Attach ad-eigenvalues for the even Cartan basis to every basis vector, if all are eigenvectors."""
    out = []
    for b in basis:
        w = []
        for h in cartan_even:
            vec = {k: v for k, v in brackets.get((h, b.index), {}).items() if v != 0}
            if not vec:
                w.append(ZERO)
            elif set(vec) == {b.index}:
                w.append(Q(vec[b.index]))
            else:
                w = None
                break
        out.append(BasisVector(b.index, b.name, b.parity, b.z_degree, None if w is None else tuple(w)))
    return out


def validate_algebra(g: LieSuperalgebra) -> ValidationReport:
    """Exhaustive exact check of super-antisymmetry, super Jacobi and gradings."""
    rep = ValidationReport(g.name)
    n = g.dim
    for i in range(n):
        for j in range(n):
            rep.checked_pairs += 1
            a = g.bracket(i, j)
            b = g.bracket(j, i)
            sign = -1 if (g.is_odd(i) and g.is_odd(j)) else 1
            diff = dict(a)
            vec_add(diff, b, sign)
            if diff and i <= j:
                rep.antisymmetry.append((g.basis[i].name, g.basis[j].name))
            p = (g.parity(i) + g.parity(j)) % 2
            for k in a:
                if g.parity(k) != p:
                    rep.parity.append((g.basis[i].name, g.basis[j].name, g.basis[k].name))
                bi, bj, bk = g.basis[i], g.basis[j], g.basis[k]
                if bi.weight is not None and bj.weight is not None and bk.weight is not None:
                    if tuple(x + y for x, y in zip(bi.weight, bj.weight)) != bk.weight:
                        rep.weights.append((bi.name, bj.name, bk.name))
                if bi.z_degree + bj.z_degree != bk.z_degree:
                    rep.z_grading.append((bi.name, bj.name, bk.name))
    # weight labels must be actual ad-eigenvalues of the Cartan basis
    for b in g.basis:
        if b.weight is None:
            continue
        if len(b.weight) != len(g.cartan_even):
            rep.weights.append((b.name, "weight length"))
            continue
        for h, w in zip(g.cartan_even, b.weight):
            expect = {b.index: w} if w != 0 else {}
            if g.bracket(h, b.index) != expect:
                rep.weights.append((g.basis[h].name, b.name, "eigenvalue"))
    # [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
    for i in range(n):
        for j in range(n):
            bij = g.bracket(i, j)
            sij = -1 if (g.is_odd(i) and g.is_odd(j)) else 1
            for k in range(n):
                rep.checked_triples += 1
                lhs = g.bracket_vec({i: ONE}, g.bracket(j, k))
                rhs = g.bracket_vec(bij, {k: ONE})
                vec_add(rhs, g.bracket_vec({j: ONE}, g.bracket(i, k)), sij)
                vec_add(lhs, rhs, -1)
                if lhs:
                    rep.jacobi.append((g.basis[i].name, g.basis[j].name, g.basis[k].name))
    if g.form is not None:
        for i in range(n):
            for j in range(n):
                x = g.form[i][j]
                if x != 0 and g.parity(i) != g.parity(j):
                    rep.form.append(("parity", g.basis[i].name, g.basis[j].name))
                sign = -1 if (g.is_odd(i) and g.is_odd(j)) else 1
                if x != sign * g.form[j][i]:
                    rep.form.append(("supersymmetry", g.basis[i].name, g.basis[j].name))
                for k in range(n):
                    # B([x,y],z) = B(x,[y,z])
                    if g.form_value(g.bracket(i, j), {k: ONE}) != g.form_value({i: ONE}, g.bracket(j, k)):
                        rep.form.append(("invariance", g.basis[i].name, g.basis[j].name, g.basis[k].name))
    return rep
