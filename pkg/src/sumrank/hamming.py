"""Hamming-metric linear codes over extension fields.

Covers the ingredient-code machinery: cyclic codes from cyclotomic
cosets, standard families (Hamming, Reed-Solomon, BCH, trivial codes),
exact minimum distance by enumeration or support testing, and exact
covering radius by coset-leader enumeration in increasing weight.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import gcd

from .gf import Field

ENUM_BUDGET = 1 << 22
SYNDROME_BUDGET = 1 << 16


class BudgetExceeded(RuntimeError):
    """An exact enumeration would overrun the configured budget."""


# ----------------------------------------------------------------------
# generic linear algebra over a field
# ----------------------------------------------------------------------

def rref(field: Field, rows):
    """Reduced row echelon form; returns (rows-without-zeros, pivot cols)."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = field.inv(mat[r][c])
        mat[r] = [field.mul(inv, x) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [field.sub(mat[i][j], field.mul(f, mat[r][j]))
                          for j in range(ncols)]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return [tuple(row) for row in mat[:r]], pivots


def nullspace(field: Field, rows, ncols: int):
    """Basis of {h : row . h = 0 for every row}, one vector per free column."""
    red, pivots = rref(field, rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for row, p in zip(red, pivots):
            vec[p] = field.neg(row[f])
        basis.append(tuple(vec))
    return basis


@dataclass
class LinearCode:
    """An [n, k] linear code over an extension field.

    G rows are a basis; H rows span the dual.  Cyclic metadata is attached
    when the code was built from a defining set.
    """

    field: Field
    n: int
    generator: tuple[tuple[int, ...], ...]
    parity: tuple[tuple[int, ...], ...]
    family: str = "explicit"
    designed_distance: int | None = None
    defining_set: tuple[int, ...] | None = None
    beta_extension_degree: int | None = None
    beta: int | None = None
    notes: dict = dc_field(default_factory=dict)
    _codeword_cache: list | None = None

    @property
    def k(self) -> int:
        return len(self.generator)

    @property
    def codim(self) -> int:
        return self.n - self.k

    @property
    def size(self) -> int:
        return self.field.order ** self.k

    def __repr__(self) -> str:
        d = self.designed_distance
        tail = f",{d}" if d is not None else ""
        return f"[{self.n},{self.k}{tail}]_{self.field.order}"

    def syndrome(self, vec) -> tuple[int, ...]:
        f = self.field
        out = []
        for row in self.parity:
            acc = 0
            for h, v in zip(row, vec):
                if v and h:
                    acc = f.add(acc, f.mul(h, v))
            out.append(acc)
        return tuple(out)

    def contains(self, vec) -> bool:
        return not any(self.syndrome(vec))

    def codewords(self, budget: int = ENUM_BUDGET):
        """Stream every codeword exactly once (streaming span walk)."""
        if self.size > budget:
            raise BudgetExceeded(f"enumerating {self.size} codewords exceeds {budget}")
        f = self.field
        scaled = [[tuple(f.mul(lam, g) for g in row) for lam in f.elements()]
                  for row in self.generator]

        def walk(i, current):
            if i == len(scaled):
                yield current
                return
            for srow in scaled[i]:
                nxt = tuple(f.add(a, b) for a, b in zip(current, srow))
                yield from walk(i + 1, nxt)

        yield from walk(0, (0,) * self.n)

    def codeword_list(self, budget: int = 1 << 16) -> list:
        if self._codeword_cache is None:
            self._codeword_cache = list(self.codewords(budget))
        return self._codeword_cache

    def describe(self) -> dict:
        return {
            "field": self.field.describe(),
            "length": self.n,
            "dimension": self.k,
            "family": self.family,
            "designed_distance": self.designed_distance,
            "defining_set": list(self.defining_set) if self.defining_set else None,
            "generator": [list(r) for r in self.generator],
        }

    def export_matrices(self) -> dict:
        """Generator and parity-check matrices as plain integer lists."""
        return {"generator": [list(r) for r in self.generator],
                "parity_check": [list(r) for r in self.parity]}


def from_generator(field: Field, rows, *, family: str = "explicit",
                   designed_distance: int | None = None, **meta) -> LinearCode:
    rows = [tuple(field.check(x) for x in r) for r in rows]
    if not rows:
        raise ValueError("use zero_code for the trivial {0} code")
    n = len(rows[0])
    red, _ = rref(field, rows)
    if len(red) != len(rows):
        raise ValueError("generator matrix rows are dependent")
    parity = tuple(nullspace(field, red, n))
    return LinearCode(field, n, tuple(red), parity, family=family,
                      designed_distance=designed_distance, **meta)


def zero_code(field: Field, t: int) -> LinearCode:
    """The trivial {0} code of length t."""
    parity = tuple(tuple(1 if j == i else 0 for j in range(t)) for i in range(t))
    return LinearCode(field, t, (), parity, family="zero")


def hamming_weight(vec) -> int:
    return sum(1 for v in vec if v)


def vec_add(field: Field, a, b):
    return tuple(field.add(x, y) for x, y in zip(a, b))


def vec_scale(field: Field, lam: int, a):
    return tuple(field.mul(lam, x) for x in a)


# ----------------------------------------------------------------------
# cyclotomic cosets and cyclic codes
# ----------------------------------------------------------------------

def cyclotomic_coset(i: int, Q: int, n: int) -> tuple[int, ...]:
    """The Q-cyclotomic coset of i modulo n, sorted ascending."""
    if gcd(n, Q) != 1:
        raise ValueError(f"gcd({n}, {Q}) must be 1")
    i %= n
    out = {i}
    j = (i * Q) % n
    while j != i:
        out.add(j)
        j = (j * Q) % n
    return tuple(sorted(out))


def all_cyclotomic_cosets(Q: int, n: int) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    cosets = []
    for i in range(n):
        if i not in seen:
            c = cyclotomic_coset(i, Q, n)
            seen.update(c)
            cosets.append(c)
    return cosets


def _multiplicative_order(Q: int, n: int) -> int:
    if gcd(Q, n) != 1:
        raise ValueError(f"gcd({n}, {Q}) must be 1 for a cyclic code")
    e, v = 1, Q % n
    while v != 1:
        v = (v * Q) % n
        e += 1
    return e


def cyclic_code(n: int, field: Field, generators) -> LinearCode:
    """Cyclic code of length n over the field with the given defining set.

    `generators` lists residues; the defining set is the union of their
    Q-cyclotomic cosets.  The primitive n-th root beta is g**((Q^l - 1)/n)
    for the designated generator g of GF(Q^l), l = ord_n(Q).
    """
    Q = field.order
    if n < 1:
        raise ValueError("length must be positive")
    ell = _multiplicative_order(Q, n)  # also validates gcd(n, Q) = 1
    T: set[int] = set()
    for g in generators:
        T.update(cyclotomic_coset(g, Q, n))
    T_sorted = tuple(sorted(T))
    ext = field.extension(ell)
    beta = ext.pow(ext.generator, (ext.order - 1) // n)
    if ext.pow(beta, n) != 1 or (n > 1 and beta == 1):
        raise ValueError("failed to construct a primitive n-th root of unity")
    # g(x) = prod_{i in T} (x - beta^i), expanded over the extension
    gpoly = [1]
    for i in T_sorted:
        root = ext.pow(beta, i)
        shifted = [0] + gpoly
        scaled = [ext.mul(ext.neg(root), c) for c in gpoly] + [0]
        gpoly = [ext.add(a, b) for a, b in zip(shifted, scaled)]
    # project coefficients to the base field
    if ell == 1:
        gcoeffs = list(gpoly)
    else:
        gcoeffs = [_project_to(field, ext, c) for c in gpoly]
    k = n - len(T_sorted)
    rows = []
    for shift in range(k):
        row = [0] * n
        for j, c in enumerate(gcoeffs):
            row[shift + j] = c
        rows.append(tuple(row))
    if not rows:
        raise ValueError("defining set covers all residues; code is trivial {0}")
    code = from_generator(field, rows, family="cyclic")
    code.defining_set = T_sorted
    code.beta_extension_degree = ell
    code.beta = beta
    code.notes["generator_polynomial"] = gcoeffs
    return code


def _project_to(field: Field, ext: Field, value: int) -> int:
    """Map an element of a tower extension back into `field`."""
    cur = ext
    v = value
    while cur != field:
        v = cur.project(v)
        cur = cur.subfield
        if cur is None:
            raise ValueError("field is not below the extension")
    return v


# ----------------------------------------------------------------------
# standard families
# ----------------------------------------------------------------------

def hamming_code(field: Field, u: int) -> LinearCode:
    """Hamming code of redundancy u: columns are the projective points."""
    if u < 2:
        raise ValueError("redundancy must be at least 2")
    Q = field.order
    t = (Q ** u - 1) // (Q - 1)
    cols = []
    for packed in range(1, Q ** u):
        vec, v = [], packed
        for _ in range(u):
            v, r = divmod(v, Q)
            vec.append(r)
        first = next(x for x in vec if x)
        if first == 1:
            cols.append(tuple(vec))
    assert len(cols) == t
    parity = tuple(tuple(col[r] for col in cols) for r in range(u))
    gen = tuple(nullspace(field, parity, t))
    code = LinearCode(field, t, gen, parity, family="hamming", designed_distance=3)
    return code


def reed_solomon(field: Field, t: int, k: int) -> LinearCode:
    """(Extended) Reed-Solomon [t, k, t-k+1]; needs t <= Q + 1."""
    Q = field.order
    if not 1 <= k <= t:
        raise ValueError("need 1 <= k <= t")
    if t > Q + 1:
        raise ValueError(f"length {t} exceeds Q + 1 = {Q + 1}")
    pts = list(range(min(t, Q)))
    rows = []
    for j in range(k):
        row = [field.pow(p, j) for p in pts]  # 0**0 evaluates to 1
        if t == Q + 1:
            row.append(1 if j == k - 1 else 0)
        rows.append(tuple(row))
    return from_generator(field, rows, family="reed-solomon", designed_distance=t - k + 1)


def repetition_code(field: Field, t: int) -> LinearCode:
    return from_generator(field, [(1,) * t], family="repetition", designed_distance=t)


def parity_check_code(field: Field, t: int) -> LinearCode:
    """Single-parity [t, t-1, 2]; cyclic with defining set {0} when gcd(t,Q)=1."""
    if t < 2:
        raise ValueError("length must be at least 2")
    if gcd(t, field.order) == 1:
        code = cyclic_code(t, field, [0])
    else:
        rows = []
        for i in range(t - 1):
            row = [0] * t
            row[i] = 1
            row[t - 1] = field.neg(1)
            rows.append(tuple(row))
        code = from_generator(field, rows, family="parity")
    code.family = "parity"
    code.designed_distance = 2
    return code


def full_code(field: Field, t: int) -> LinearCode:
    rows = [tuple(1 if j == i else 0 for j in range(t)) for i in range(t)]
    code = from_generator(field, rows, family="full", designed_distance=1)
    if gcd(t, field.order) == 1:
        code.defining_set = ()
    return code


def bch_binary(e: int, n: int) -> LinearCode:
    """Binary primitive BCH code of length 2^n - 1, designed distance 2e+1."""
    from .gf import make_field
    if e < 1 or n < 2:
        raise ValueError("need e >= 1 and n >= 2")
    length = 2 ** n - 1
    if 2 * e + 1 > length:
        raise ValueError("designed distance exceeds the length")
    f2 = make_field(2, [1])
    code = cyclic_code(length, f2, list(range(1, 2 * e + 1)))
    code.family = "bch"
    code.designed_distance = 2 * e + 1
    return code


def standard_family(kind: str, field: Field | None = None, **params) -> LinearCode:
    """Dispatch table used by the CLI and config loader."""
    kind = kind.lower()
    if kind == "hamming":
        return hamming_code(field, params["u"])
    if kind in ("rs", "reed-solomon"):
        return reed_solomon(field, params["t"], params["k"])
    if kind == "repetition":
        return repetition_code(field, params["t"])
    if kind == "parity":
        return parity_check_code(field, params["t"])
    if kind == "full":
        return full_code(field, params["t"])
    if kind == "bch":
        return bch_binary(params["e"], params["n"])
    if kind == "cyclic":
        return cyclic_code(params["n"], field, params["generators"])
    raise ValueError(f"unknown family {kind!r}")


def field_extension_of_code(code: LinearCode, target: Field) -> LinearCode:
    """Read the generator matrix over a larger field of the same tower."""
    if not target.contains_field(code.field):
        raise ValueError(f"{target!r} does not extend {code.field!r}")
    ext = from_generator(target, code.generator, family="extension",
                         designed_distance=code.designed_distance)
    ext.notes["base_field_order"] = code.field.order
    return ext


# ----------------------------------------------------------------------
# minimum distance
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class DistanceResult:
    lo: int
    hi: int
    method: str
    witness: tuple[int, ...] | None = None

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"distance only known to lie in [{self.lo}, {self.hi}]")
        return self.lo


def _norm_column(field: Field, col):
    """Scale a column so its first nonzero entry is 1 (projective rep)."""
    first = next((x for x in col if x), None)
    if first is None:
        return None
    inv = field.inv(first)
    return tuple(field.mul(inv, x) for x in col)


def _columns(code: LinearCode) -> list[tuple[int, ...]]:
    return [tuple(row[j] for row in code.parity) for j in range(code.n)]


def low_weight_search(code: LinearCode, w: int):
    """First codeword of Hamming weight exactly w (w <= 4), or None.

    Searches parity-check column dependencies directly, so it does not
    enumerate the code: singles, proportional pairs, pair-span triples, and
    a meet-in-the-middle pass for quadruples.
    """
    found = list(iter_low_weight(code, w, cap=1))
    return found[0] if found else None


def iter_low_weight(code: LinearCode, w: int, cap: int = 1 << 30):
    """Yield up to `cap` codewords of weight exactly w, for w <= 4."""
    f = code.field
    cols = _columns(code)
    n = code.n
    if code.codim == 0:
        # full space: any support works
        count = 0
        for support in itertools.combinations(range(n), w):
            vec = [0] * n
            for s in support:
                vec[s] = 1
            yield tuple(vec)
            count += 1
            if count >= cap:
                return
        return
    emitted = 0

    def emit(positions, coeffs):
        nonlocal emitted
        vec = [0] * n
        for p, c in zip(positions, coeffs):
            vec[p] = c
        emitted += 1
        return tuple(vec)

    if w == 1:
        for j, col in enumerate(cols):
            if not any(col):
                for lam in f.nonzero_elements():
                    yield emit([j], [lam])
                    if emitted >= cap:
                        return
        return
    if w == 2:
        for i, j in itertools.combinations(range(n), 2):
            if not any(cols[i]) or not any(cols[j]):
                continue
            # lam_i * c_i + lam_j * c_j = 0  <=>  c_j = mu * c_i
            mu = None
            for a, b in zip(cols[i], cols[j]):
                if a == 0 and b == 0:
                    continue
                if a == 0 or b == 0:
                    mu = None
                    break
                cand = f.div(b, a)
                if mu is None:
                    mu = cand
                elif mu != cand:
                    mu = None
                    break
            if mu is None:
                continue
            for lam in f.nonzero_elements():
                yield emit([i, j], [f.mul(lam, mu), f.neg(lam)])
                if emitted >= cap:
                    return
        return
    if w == 3:
        # lam1 c_i + lam2 c_j + lam3 c_k = 0 with all lams nonzero
        norm_map: dict[tuple, list[int]] = {}
        for j, col in enumerate(cols):
            nc = _norm_column(f, col)
            if nc is not None:
                norm_map.setdefault(nc, []).append(j)
        for i, j in itertools.combinations(range(n), 2):
            ci, cj = cols[i], cols[j]
            if not any(ci) or not any(cj):
                continue
            for b in f.nonzero_elements():
                combo = tuple(f.add(x, f.mul(b, y)) for x, y in zip(ci, cj))
                nc = _norm_column(f, combo)
                if nc is None:
                    continue
                for k in norm_map.get(nc, ()):
                    if k <= j or k == i:
                        continue
                    # combo = c_i + b c_j is proportional to c_k
                    first = next(x for x in combo if x)
                    kfirst = next(x for x in cols[k] if x)
                    scale = f.div(first, kfirst)
                    for lam in f.nonzero_elements():
                        yield emit([i, j, k],
                                   [lam, f.mul(lam, b), f.neg(f.mul(lam, scale))])
                        if emitted >= cap:
                            return
        return
    if w == 4:
        pair_syn: dict[tuple, list[tuple[int, int, int, int]]] = {}
        for i, j in itertools.combinations(range(n), 2):
            ci, cj = cols[i], cols[j]
            for a in f.nonzero_elements():
                for b in f.nonzero_elements():
                    s = tuple(f.add(f.mul(a, x), f.mul(b, y)) for x, y in zip(ci, cj))
                    pair_syn.setdefault(s, []).append((i, j, a, b))
        for s in sorted(pair_syn):
            neg = tuple(f.neg(x) for x in s)
            if neg not in pair_syn:
                continue
            if neg == s:
                entries = pair_syn[s]
                for x in range(len(entries)):
                    i, j, a, b = entries[x]
                    for y in range(x + 1, len(entries)):
                        k, l, c, d = entries[y]
                        if len({i, j, k, l}) != 4:
                            continue
                        yield emit([i, j, k, l], [a, b, c, d])
                        if emitted >= cap:
                            return
            elif s < neg:
                for (i, j, a, b) in pair_syn[s]:
                    for (k, l, c, d) in pair_syn[neg]:
                        if len({i, j, k, l}) != 4:
                            continue
                        yield emit([i, j, k, l], [a, b, c, d])
                        if emitted >= cap:
                            return
        return
    raise ValueError("support search handles weights 1..4 only")


def min_distance(code: LinearCode, method: str = "auto",
                 budget: int = ENUM_BUDGET) -> DistanceResult:
    """Exact minimum distance with a proof tag.

    'enumerate' streams every codeword (requires Q^k <= budget);
    'support' certifies d >= w+1 by the absence of dependent column sets
    of size <= w and exhibits a weight witness, for d <= 4.  When neither
    settles the value, an interval [5, Singleton] is returned.
    """
    if code.k == 0:
        raise ValueError("the zero code has no nonzero codeword")
    if method == "auto":
        method = "enumerate" if code.size <= min(budget, 1 << 16) else "support"
    if method == "enumerate":
        if code.size > budget:
            raise BudgetExceeded(f"{code.size} codewords exceed budget {budget}")
        best, witness = None, None
        for cw in code.codewords(budget):
            w = hamming_weight(cw)
            if w and (best is None or w < best):
                best, witness = w, cw
        return DistanceResult(best, best, "enumerate", witness)
    if method == "support":
        for w in range(1, 5):
            witness = low_weight_search(code, w)
            if witness is not None:
                return DistanceResult(w, w, "support_test", witness)
        return DistanceResult(5, code.n - code.k + 1, "support_test", None)
    raise ValueError(f"unknown method {method!r}")


# ----------------------------------------------------------------------
# covering radius
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CosetLeaderTable:
    """Minimum coset weight per syndrome; max entry is the covering radius."""

    flavor: str
    leader_weight: dict[tuple, int]

    @property
    def covering_radius(self) -> int:
        return max(self.leader_weight.values())

    def complete(self, expected: int) -> bool:
        return len(self.leader_weight) == expected


def covering_radius(code: LinearCode, *, syndrome_budget: int = SYNDROME_BUDGET,
                    word_budget: int = ENUM_BUDGET) -> tuple[int, CosetLeaderTable]:
    """Exact covering radius via weight-ordered coset-leader enumeration.

    Walks ambient words by increasing Hamming weight; the first weight at
    which a syndrome appears is its coset-leader weight.  Stops once every
    syndrome has been seen.
    """
    f = code.field
    n_syn = f.order ** code.codim
    if n_syn > syndrome_budget:
        raise BudgetExceeded(f"{n_syn} syndromes exceed budget {syndrome_budget}")
    cols = _columns(code)
    leaders: dict[tuple, int] = {(0,) * code.codim: 0}
    words = 1
    if code.codim == 0:
        return 0, CosetLeaderTable("hamming", leaders)
    nonzero = list(f.nonzero_elements())
    for w in range(1, code.n + 1):
        for support in itertools.combinations(range(code.n), w):
            sup_cols = [cols[j] for j in support]
            for coeffs in itertools.product(nonzero, repeat=w):
                acc = [0] * code.codim
                for lam, col in zip(coeffs, sup_cols):
                    for r, h in enumerate(col):
                        if h:
                            acc[r] = f.add(acc[r], f.mul(lam, h))
                syn = tuple(acc)
                if syn not in leaders:
                    leaders[syn] = w
                words += 1
                if words > word_budget:
                    raise BudgetExceeded("coset-leader walk exceeded the word budget")
        if len(leaders) == n_syn:
            return w, CosetLeaderTable("hamming", leaders)
    return max(leaders.values()), CosetLeaderTable("hamming", leaders)


def covering_radius_sweep(code: LinearCode, budget: int = 1 << 20) -> int:
    """Independent oracle: full ambient max-min distance sweep."""
    f = code.field
    total = f.order ** code.n
    if total > budget:
        raise BudgetExceeded(f"ambient of {total} words exceeds budget {budget}")
    words = code.codeword_list()
    worst = 0
    for vec in itertools.product(f.elements(), repeat=code.n):
        best = min(sum(1 for a, b in zip(vec, cw) if a != b) for cw in words)
        worst = max(worst, best)
    return worst


# ----------------------------------------------------------------------
# designed-distance bounds for cyclic codes
# ----------------------------------------------------------------------

def bch_bound(T, n: int) -> int:
    """Largest run of consecutive residues in T, plus one."""
    Ts = set(x % n for x in T)
    if len(Ts) == n:
        return n + 1
    best = 0
    for start in Ts:
        if (start - 1) % n in Ts:
            continue
        run, cur = 1, start
        while (cur + 1) % n in Ts:
            run += 1
            cur = (cur + 1) % n
        best = max(best, run)
    return best + 1


def hartmann_tzeng_bound(T, n: int, A, B, b: int, s: int) -> int:
    """Certified bound delta + s after verifying every hypothesis."""
    Ts = set(x % n for x in T)
    A = sorted(x % n for x in A)
    delta = len(A) + 1
    for prev, cur in zip(A, A[1:]):
        if (prev + 1) % n != cur % n:
            raise ValueError(f"A = {A} is not a consecutive run modulo {n}")
    if not set(A) <= Ts:
        raise ValueError(f"A = {A} is not contained in the defining set")
    expected_B = sorted({(j * b) % n for j in range(s + 1)})
    if sorted(set(x % n for x in B)) != expected_B:
        raise ValueError(f"B = {sorted(B)} does not equal {{jb mod n : 0<=j<={s}}}")
    if gcd(b, n) >= delta:
        raise ValueError(f"gcd({b}, {n}) = {gcd(b, n)} is not below delta = {delta}")
    sums = {(a + x) % n for a in A for x in expected_B}
    if not sums <= Ts:
        raise ValueError(f"A + B has elements outside the defining set: "
                         f"{sorted(sums - Ts)}")
    return delta + s


def bch_covering_radius_interval(e: int, n: int):
    """Interval [2e-1, 2e] for the covering radius of BCH(e, n), or None.

    Applies only under the exact big-integer hypothesis 2^n >= (2e-1)^(4e+2).
    """
    if e < 1 or n < 1:
        raise ValueError("need positive e and n")
    if 2 ** n < (2 * e - 1) ** (4 * e + 2):
        return None
    return (2 * e - 1, 2 * e)


# ----------------------------------------------------------------------
# low-weight pools and the quasi-perfect [6,3,4] ingredient search
# ----------------------------------------------------------------------

def low_weight_pool(code: LinearCode, wmax: int, cap: int = 512) -> list[tuple[int, ...]]:
    """Up to `cap` codewords of weight <= wmax (wmax <= 4), by support search."""
    if code.size <= 1 << 14:
        out = [cw for cw in code.codeword_list()
               if 0 < hamming_weight(cw) <= wmax]
        out.sort(key=lambda v: (hamming_weight(v), v))
        return out[:cap]
    pool: list[tuple[int, ...]] = []
    for w in range(1, min(wmax, 4) + 1):
        for cw in iter_low_weight(code, w, cap=cap - len(pool)):
            pool.append(cw)
            if len(pool) >= cap:
                return pool
    return pool


def search_634_ingredient(field4: Field, verbose: bool = False) -> LinearCode:
    """Deterministic search for a [6,3,4] code over GF(4) of covering radius 2.

    Scans generator matrices [I | A] with A Hermitian-unitary and entrywise
    nonzero (the self-dual shape), verifying d = 4 by enumeration and the
    covering radius by coset-leader walk; widens to all entrywise-nonzero A
    if needed.
    """
    if field4.order != 4:
        raise ValueError("the search runs over GF(4)")
    f = field4

    def candidates():
        nz = (1, 2, 3)
        for entries in itertools.product(nz, repeat=9):
            A = [entries[0:3], entries[3:6], entries[6:9]]
            ok = True
            for i in range(3):
                for j in range(3):
                    acc = 0
                    for l in range(3):
                        acc = f.add(acc, f.mul(A[i][l], f.mul(A[j][l], A[j][l])))
                    if acc != (1 if i == j else 0):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                yield A
        for entries in itertools.product(nz, repeat=9):
            yield [entries[0:3], entries[3:6], entries[6:9]]

    seen = set()
    for A in candidates():
        key = tuple(map(tuple, A))
        if key in seen:
            continue
        seen.add(key)
        rows = [tuple((1 if j == i else 0) for j in range(3)) + tuple(A[i])
                for i in range(3)]
        code = from_generator(f, rows, family="explicit")
        dres = min_distance(code, "enumerate")
        if dres.value != 4:
            continue
        radius, _ = covering_radius(code)
        if radius == 2:
            code.designed_distance = 4
            code.notes["covering_radius"] = 2
            return code
    raise RuntimeError("no [6,3,4]_4 code of covering radius 2 found")
