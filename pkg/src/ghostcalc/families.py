"""Built-in algebra families, constructed from explicit supermatrices.

Structure constants are obtained by decomposing supercommutators back into the
chosen basis, so the matrices double as a faithful representation.
"""

from __future__ import annotations

import re

from .algebra import EVEN, ODD, BasisVector, LieSuperalgebra, compute_weights
from .errors import UnsupportedAlgebra
from .fields import ONE, ZERO, Q
from .linalg import Decomposer


def E(r: int, c: int, x=ONE) -> dict:
    return {(r, c): Q(x)}


def mat_add(*ms, scales=None) -> dict:
    out = {}
    for idx, m in enumerate(ms):
        s = ONE if scales is None else Q(scales[idx])
        for k, v in m.items():
            out[k] = out.get(k, ZERO) + s * v
    return {k: v for k, v in out.items() if v != 0}


def mat_mul(a: dict, b: dict) -> dict:
    rows = {}
    for (r, k), v in b.items():
        rows.setdefault(r, []).append((k, v))
    out = {}
    for (i, r), u in a.items():
        for k, v in rows.get(r, ()):
            out[(i, k)] = out.get((i, k), ZERO) + u * v
    return {k: v for k, v in out.items() if v != 0}


def supercommutator(a: dict, pa: int, b: dict, pb: int) -> dict:
    sign = -1 if (pa and pb) else 1
    return mat_add(mat_mul(a, b), mat_mul(b, a), scales=(1, -sign))


def supertrace(m: dict, even_dim: int):
    total = ZERO
    for (r, c), v in m.items():
        if r == c:
            total += v if r < even_dim else -v
    return total


def _flatten(m: dict, size: int) -> dict:
    return {r * size + c: v for (r, c), v in m.items()}


def algebra_from_matrices(name, even_dim, odd_dim, entries, cartan_even, cartan_odd=(),
                          form_scale=None, family=None, params=(), positivity=None):
    """Build an algebra from homogeneous supermatrices.

    ``entries`` is a list of (name, parity, z_degree, sparse matrix).
    ``form_scale`` multiplies the supertrace form str(XY); None means no form.
    """
    size = even_dim + odd_dim
    mats = [e[3] for e in entries]
    dec = Decomposer([_flatten(m, size) for m in mats])
    basis = [BasisVector(i, e[0], e[1], e[2]) for i, e in enumerate(entries)]
    brackets = {}
    for i, a in enumerate(entries):
        for j, b in enumerate(entries):
            comm = supercommutator(a[3], a[1], b[3], b[1])
            if not comm:
                continue
            coords = dec.coordinates(_flatten(comm, size))
            if coords is None:
                raise UnsupportedAlgebra(f"basis of {name} is not closed under the bracket ({a[0]}, {b[0]})")
            brackets[(i, j)] = coords
    basis = compute_weights(basis, brackets, cartan_even)
    form = None
    if form_scale is not None:
        s = Q(form_scale)
        form = [[s * supertrace(mat_mul(a[3], b[3]), even_dim) for b in entries] for a in entries]
    if positivity is not None and not isinstance(positivity, (list, tuple)):
        # a matrix in the Cartan span; express it in Cartan coordinates
        cdec = Decomposer([_flatten(mats[h], size) for h in cartan_even])
        coords = cdec.coordinates(_flatten(positivity, size))
        if coords is None:
            raise UnsupportedAlgebra("positivity element is not in the Cartan subalgebra")
        positivity = [coords.get(k, ZERO) for k in range(len(cartan_even))]
    return LieSuperalgebra(name, basis, brackets, cartan_even=cartan_even, cartan_odd=cartan_odd,
                           form=form, family=family, params=params, positivity=positivity,
                           representation=(even_dim, odd_dim, tuple(mats)))


# ---------------------------------------------------------------------------

def _gl_entries(m: int, n: int):
    N = m + n
    special = (m, n) == (1, 1)
    entries = []
    for i in range(N):
        entries.append((f"h{i + 1}", EVEN, 0, E(i, i)))
    for i in range(N):
        for j in range(N):
            if i != j and (i < m) == (j < m):
                entries.append((f"e{i + 1}{j + 1}", EVEN, 0, E(i, j)))
    for i in range(m):
        for j in range(m, N):
            entries.append(("x" if special else f"e{i + 1}{j + 1}", ODD, 1, E(i, j)))
    for j in range(m, N):
        for i in range(m):
            entries.append(("y" if special else f"e{j + 1}{i + 1}", ODD, -1, E(j, i)))
    return entries


def build_gl(m: int, n: int) -> LieSuperalgebra:
    if m < 1 or n < 1:
        raise UnsupportedAlgebra("gl(m|n) needs m, n >= 1")
    N = m + n
    entries = _gl_entries(m, n)
    eta = {(i, i): Q(N - i) for i in range(N)}
    return algebra_from_matrices(f"gl({m}|{n})", m, n, entries, cartan_even=list(range(N)),
                                 form_scale=1, family="gl", params=(m, n), positivity=eta)


def build_sl(m: int, n: int) -> LieSuperalgebra:
    if m < 1 or n < 1 or m == n:
        raise UnsupportedAlgebra("sl(m|n) is supported for m != n, m, n >= 1")
    N = m + n
    entries = []
    for i in range(N - 1):
        if i == m - 1:
            mat = mat_add(E(i, i), E(i + 1, i + 1))
        else:
            mat = mat_add(E(i, i), E(i + 1, i + 1, -1))
        entries.append((f"h{i + 1}", EVEN, 0, mat))
    entries.extend(e for e in _gl_entries(m, n) if not re.fullmatch(r"h\d+", e[0]))
    # diag(d) with d strictly decreasing and zero supertrace
    base = [Q(N - i) for i in range(N)]
    s_even = sum(base[:m])
    s_odd = sum(base[m:])
    shift = (s_odd - s_even) / (m - n)
    eta = {(i, i): base[i] + shift for i in range(N)}
    return algebra_from_matrices(f"sl({m}|{n})", m, n, entries, cartan_even=list(range(N - 1)),
                                 form_scale=1, family="sl", params=(m, n), positivity=eta)


def _sp_entries(n: int, off: int):
    """Even basis of sp(2n) acting on indices off .. off+2n-1 (symplectic form [[0,I],[-I,0]])."""
    out = []
    for i in range(n):
        out.append((f"h{i + 1}", EVEN, 0, mat_add(E(off + i, off + i), E(off + n + i, off + n + i, -1))))
    for i in range(n):
        for j in range(n):
            if i != j:
                out.append((f"x{i + 1}{j + 1}", EVEN, 0,
                            mat_add(E(off + i, off + j), E(off + n + j, off + n + i, -1))))
    for i in range(n):
        for j in range(i, n):
            out.append((f"p{i + 1}{j + 1}", EVEN, 0, mat_add(E(off + i, off + n + j), E(off + j, off + n + i))))
    for i in range(n):
        for j in range(i, n):
            out.append((f"q{i + 1}{j + 1}", EVEN, 0, mat_add(E(off + n + i, off + j), E(off + n + j, off + i))))
    return out


def _odd_pair(n: int, off: int, src: int, partner: int, k: int):
    """Odd map sending the even vector ``src`` to symplectic vector k, with the
    compensating V1 -> V0 block landing on ``partner`` (the G0-dual of src)."""
    if k < n:
        return mat_add(E(off + k, src), E(partner, off + n + k, -1))
    return mat_add(E(off + k, src), E(partner, off + k - n))


def build_osp_1_2n(n: int) -> LieSuperalgebra:
    if n < 1:
        raise UnsupportedAlgebra("osp(1|2n) needs n >= 1")
    entries = _sp_entries(n, 1)
    for i in range(n):
        entries.append((f"u{i + 1}", ODD, 0, _odd_pair(n, 1, 0, 0, i)))
        entries.append((f"v{i + 1}", ODD, 0, _odd_pair(n, 1, 0, 0, n + i)))
    eta = {(1 + i, 1 + i): Q(n - i) for i in range(n)}
    eta.update({(1 + n + i, 1 + n + i): -Q(n - i) for i in range(n)})
    return algebra_from_matrices(f"osp(1|{2 * n})", 1, 2 * n, entries, cartan_even=list(range(n)),
                                 form_scale=Q(-1, 2), family="osp1", params=(n,), positivity=eta)


def build_osp_2_2n(n: int) -> LieSuperalgebra:
    if n < 1:
        raise UnsupportedAlgebra("osp(2|2n) needs n >= 1")
    entries = [("z", EVEN, 0, mat_add(E(0, 0), E(1, 1, -1)))]
    entries.extend(_sp_entries(n, 2))
    # e_+ = 0, e_- = 1; the form on V0 pairs them
    for i in range(n):
        entries.append((f"up{i + 1}", ODD, 1, _odd_pair(n, 2, 1, 0, i)))
        entries.append((f"um{i + 1}", ODD, 1, _odd_pair(n, 2, 1, 0, n + i)))
    for i in range(n):
        entries.append((f"dp{i + 1}", ODD, -1, _odd_pair(n, 2, 0, 1, i)))
        entries.append((f"dm{i + 1}", ODD, -1, _odd_pair(n, 2, 0, 1, n + i)))
    eta = {(0, 0): Q(n + 1), (1, 1): -Q(n + 1)}
    eta.update({(2 + i, 2 + i): Q(n - i) for i in range(n)})
    eta.update({(2 + n + i, 2 + n + i): -Q(n - i) for i in range(n)})
    return algebra_from_matrices(f"osp(2|{2 * n})", 2, 2 * n, entries, cartan_even=list(range(n + 1)),
                                 form_scale=Q(1, 2), family="osp2", params=(n,), positivity=eta)


def build_q1() -> LieSuperalgebra:
    entries = [("h", EVEN, 0, mat_add(E(0, 0), E(1, 1))), ("b", ODD, 0, mat_add(E(0, 1), E(1, 0)))]
    return algebra_from_matrices("q(1)", 1, 1, entries, cartan_even=[0], cartan_odd=[1],
                                 family="q", params=(1,))


def build_abelian(m: int, n: int) -> LieSuperalgebra:
    if m < 0 or n < 0:
        raise UnsupportedAlgebra("abelian(m|n) needs m, n >= 0")
    basis = [BasisVector(i, f"a{i + 1}", EVEN, 0, tuple(ZERO for _ in range(m))) for i in range(m)]
    basis += [BasisVector(m + i, f"xi{i + 1}", ODD, 0, tuple(ZERO for _ in range(m))) for i in range(n)]
    return LieSuperalgebra(f"abelian({m}|{n})", basis, {}, cartan_even=list(range(m)),
                           cartan_odd=list(range(m, m + n)), family="abelian", params=(m, n))


_BUILDERS = {
    "gl": (build_gl, 2),
    "sl": (build_sl, 2),
    "abelian": (build_abelian, 2),
    "q": (lambda k: build_q1() if k == 1 else _unsupported(f"q({k})"), 1),
}

_cache: dict = {}


def _unsupported(what):
    raise UnsupportedAlgebra(f"{what} is not a built-in algebra")


def parse_algebra_name(text: str):
    """Accept 'gl(2|1)', 'gl,2,1', 'osp(1|4)', 'q(1)', 'abelian(0|2)'."""
    t = text.strip().replace(" ", "")
    m = re.fullmatch(r"([A-Za-z]+)\(([\d|,]*)\)", t)
    if m:
        fam, args = m.group(1), m.group(2)
        params = [int(x) for x in re.split(r"[|,]", args) if x != ""]
        return fam.lower(), tuple(params)
    parts = t.split(",")
    try:
        return parts[0].lower(), tuple(int(x) for x in parts[1:])
    except ValueError:
        raise UnsupportedAlgebra(f"cannot parse algebra name {text!r}") from None


def build_algebra(family: str, *params) -> LieSuperalgebra:
    """Build (and cache) a built-in algebra, e.g. ``build_algebra("gl(1|1)")``."""
    if not params:
        family, params = parse_algebra_name(family)
    key = (family, tuple(params))
    if key in _cache:
        return _cache[key]
    if family == "osp":
        if len(params) != 2 or params[1] % 2:
            raise UnsupportedAlgebra(f"osp{params} is not supported")
        if params[0] == 1:
            g = build_osp_1_2n(params[1] // 2)
        elif params[0] == 2:
            g = build_osp_2_2n(params[1] // 2)
        else:
            raise UnsupportedAlgebra(f"osp({params[0]}|{params[1]}) is not a built-in algebra")
    elif family in _BUILDERS:
        builder, arity = _BUILDERS[family]
        if len(params) != arity:
            raise UnsupportedAlgebra(f"{family} expects {arity} parameters")
        g = builder(*params)
    else:
        raise UnsupportedAlgebra(f"unknown algebra family {family!r}")
    if g.dim > 60:
        raise UnsupportedAlgebra(f"{g.name} is too large for exact desk-scale computation")
    _cache[key] = g
    return g
