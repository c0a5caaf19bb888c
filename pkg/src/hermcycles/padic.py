"""Truncated arithmetic in the unramified quadratic extension of Z_p.

The ring of integers of the degree-2 unramified extension is modeled at
precision k as (Z/p^k)[w] / (w^2 - delta), where delta is the least
positive quadratic nonresidue mod p.  Any nonresidue gives an isomorphic
ring; fixing delta makes every count reproducible bit for bit.

Also provides hermitian matrices over the truncated ring and a
valuation-pivoted Gram reduction that extracts the exponents of the
diagonal form diag(p^a1, ..., p^an).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import HermcyclesError


class MixedParams(HermcyclesError):
    """Operands live in rings with different (p, k, delta)."""


class DimensionMismatch(HermcyclesError):
    """Matrix dimensions are incompatible."""


class InsufficientPrecision(HermcyclesError):
    """The truncation level cannot certify the requested quantity."""


class SingularMatrix(HermcyclesError):
    """The matrix is singular at the given precision."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all 64-bit inputs."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def least_nonresidue(p: int) -> int:
    """Least positive quadratic nonresidue mod an odd prime p."""
    for d in range(2, p):
        if pow(d, (p - 1) // 2, p) == p - 1:
            return d
    raise ValueError(f"no quadratic nonresidue found mod {p}")


@dataclass(frozen=True)
class RingParams:
    """Parameters of the truncated extension ring (Z/p^k)[w]/(w^2 - delta)."""

    p: int
    k: int
    delta: int | None = None

    def __post_init__(self):
        if self.p < 3 or not is_prime(self.p):
            raise ValueError(f"p={self.p} must be an odd prime")
        if self.k < 1:
            raise ValueError(f"precision k={self.k} must be >= 1")
        if self.delta is None:
            object.__setattr__(self, "delta", least_nonresidue(self.p))
        elif pow(self.delta, (self.p - 1) // 2, self.p) != self.p - 1:
            raise ValueError(f"delta={self.delta} is not a nonresidue mod {self.p}")

    @property
    def modulus(self) -> int:
        return self.p**self.k


class ExtRingElem:
    """Element a + b*w of the truncated extension ring."""

    __slots__ = ("params", "a", "b")

    def __init__(self, params: RingParams, a: int, b: int = 0):
        self.params = params
        m = params.modulus
        self.a = a % m
        self.b = b % m

    def _check(self, other: "ExtRingElem"):
        if self.params != other.params:
            raise MixedParams(f"{self.params} vs {other.params}")

    def __add__(self, other: "ExtRingElem") -> "ExtRingElem":
        self._check(other)
        return ExtRingElem(self.params, self.a + other.a, self.b + other.b)

    def __sub__(self, other: "ExtRingElem") -> "ExtRingElem":
        self._check(other)
        return ExtRingElem(self.params, self.a - other.a, self.b - other.b)

    def __neg__(self) -> "ExtRingElem":
        return ExtRingElem(self.params, -self.a, -self.b)

    def __mul__(self, other) -> "ExtRingElem":
        if isinstance(other, int):
            return ExtRingElem(self.params, self.a * other, self.b * other)
        self._check(other)
        d = self.params.delta
        return ExtRingElem(
            self.params,
            self.a * other.a + d * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def conj(self) -> "ExtRingElem":
        """Galois conjugate a - b*w."""
        return ExtRingElem(self.params, self.a, -self.b)

    def norm(self) -> int:
        """Norm to Z/p^k: a^2 - delta*b^2 (the w-part is identically 0)."""
        return (self.a * self.a - self.params.delta * self.b * self.b) % self.params.modulus

    def trace(self) -> int:
        return (2 * self.a) % self.params.modulus

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.a % self.params.p != 0 or self.b % self.params.p != 0

    def valuation(self) -> int:
        """min(v_p(a), v_p(b)), capped at k for the zero residue."""
        if self.is_zero():
            return self.params.k
        p, v = self.params.p, 0
        a, b = self.a, self.b
        while a % p == 0 and b % p == 0:
            a //= p
            b //= p
            v += 1
        return v

    def unit_part(self, v: int) -> "ExtRingElem":
        """self / p^v, defined mod p^(k-v); requires p^v to divide self."""
        pv = self.params.p**v
        if self.a % pv or self.b % pv:
            raise ValueError(f"p^{v} does not divide {self}")
        return ExtRingElem(self.params, self.a // pv, self.b // pv)

    def inverse(self) -> "ExtRingElem":
        """Multiplicative inverse of a unit: conj(x) / norm(x)."""
        n = self.norm()
        if n % self.params.p == 0:
            raise ZeroDivisionError(f"{self} is not a unit")
        ninv = pow(n, -1, self.params.modulus)
        return self.conj() * ninv

    def __eq__(self, other):
        return (
            isinstance(other, ExtRingElem)
            and self.params == other.params
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return hash((self.params, self.a, self.b))

    def __repr__(self):
        return f"({self.a}+{self.b}w mod {self.params.p}^{self.params.k})"


class HermMatrix:
    """Hermitian matrix over the truncated extension ring.

    Both triangles are stored and the sigma-symmetry is re-validated at
    construction; diagonal entries must have zero w-part.
    """

    __slots__ = ("params", "n", "entries")

    def __init__(self, params: RingParams, entries):
        self.params = params
        rows = [list(r) for r in entries]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("hermitian matrix must be square")
        for i in range(n):
            for j in range(n):
                e = rows[i][j]
                if not isinstance(e, ExtRingElem):
                    raise TypeError("entries must be ExtRingElem")
                if e.params != params:
                    raise MixedParams("entry ring differs from matrix ring")
        for i in range(n):
            if rows[i][i].b != 0:
                raise ValueError(f"diagonal entry {i} has nonzero w-part")
            for j in range(i + 1, n):
                if rows[j][i] != rows[i][j].conj():
                    raise ValueError(f"entries ({i},{j})/({j},{i}) are not conjugate")
        self.n = n
        self.entries = tuple(tuple(r) for r in rows)

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_int_rows(cls, params: RingParams, rows) -> "HermMatrix":
        """Build from rows of ints or (a, b) pairs."""
        conv = []
        for r in rows:
            cr = []
            for v in r:
                if isinstance(v, ExtRingElem):
                    cr.append(v)
                elif isinstance(v, tuple):
                    cr.append(ExtRingElem(params, v[0], v[1]))
                else:
                    cr.append(ExtRingElem(params, int(v)))
            conv.append(cr)
        return cls(params, conv)

    @classmethod
    def diagonal(cls, params: RingParams, values) -> "HermMatrix":
        vals = list(values)
        n = len(vals)
        z = ExtRingElem(params, 0)
        rows = [[z] * n for _ in range(n)]
        for i, v in enumerate(vals):
            rows[i][i] = v if isinstance(v, ExtRingElem) else ExtRingElem(params, int(v))
        return cls(params, rows)

    @classmethod
    def from_exponents(cls, params: RingParams, exps) -> "HermMatrix":
        return cls.diagonal(params, [params.p**a for a in exps])

    @classmethod
    def identity(cls, params: RingParams, n: int) -> "HermMatrix":
        return cls.diagonal(params, [1] * n)

    # -- serialization -----------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "p": self.params.p,
            "k": self.params.k,
            "delta": self.params.delta,
            "entries": [[{"a": e.a, "b": e.b} for e in row] for row in self.entries],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "HermMatrix":
        params = RingParams(int(obj["p"]), int(obj["k"]), int(obj.get("delta") or 0) or None)
        rows = [
            [ExtRingElem(params, int(e["a"]), int(e["b"])) for e in row] for row in obj["entries"]
        ]
        return cls(params, rows)

    def reduce_to(self, k: int) -> "HermMatrix":
        """The same matrix truncated to a lower precision."""
        if k > self.params.k:
            raise InsufficientPrecision(f"cannot raise precision {self.params.k} -> {k}")
        params = RingParams(self.params.p, k, self.params.delta)
        rows = [[ExtRingElem(params, e.a, e.b) for e in row] for row in self.entries]
        return HermMatrix(params, rows)

    def __eq__(self, other):
        return (
            isinstance(other, HermMatrix)
            and self.params == other.params
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"HermMatrix(n={self.n}, p={self.params.p}, k={self.params.k})"


def herm_apply(s: HermMatrix, x) -> HermMatrix:
    """Return the hermitian Gram matrix t(x) * S * conj(x) of the columns of x.

    x is an m-by-n matrix (rows of ExtRingElem) over the same ring as S.
    """
    rows = [list(r) for r in x]
    m = len(rows)
    if m != s.n:
        raise DimensionMismatch(f"x has {m} rows, S is {s.n}x{s.n}")
    n = len(rows[0]) if rows else 0
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("ragged column matrix")
    params = s.params
    for r in rows:
        for e in r:
            if e.params != params:
                raise MixedParams("x entries live in a different ring")
    zero = ExtRingElem(params, 0)
    # (S[x])_{ij} = sum_{s,t} x_{si} S_{st} conj(x_{tj})
    sx = [[zero] * n for _ in range(m)]  # S * conj(x)
    for t in range(m):
        for j in range(n):
            acc = zero
            for u in range(m):
                acc = acc + s.entries[t][u] * rows[u][j].conj()
            sx[t][j] = acc
    out = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = zero
            for t in range(m):
                acc = acc + rows[t][i] * sx[t][j]
            out[i][j] = acc
    return HermMatrix(params, out)


def herm_diagonalize(t: HermMatrix) -> tuple[int, ...]:
    """Exponents (a1 <= ... <= an) of the equivalent diagonal form diag(p^ai).

    Valuation-pivoted hermitian Gram reduction: take an entry of minimal
    valuation (preferring diagonal entries); a diagonal pivot splits off
    its vector directly, an off-diagonal pivot (i, j) is first converted
    to a diagonal one by the basis change e_i -> e_i + c*e_j with c in
    {1, w} (valid since p > 2).  Requires k > v_p(det T) so every pivot
    valuation is certified.
    """
    params = t.params
    p, k = params.p, params.k
    g = [list(row) for row in t.entries]
    idx = list(range(t.n))
    exps: list[int] = []

    while idx:
        vdiag, idiag = k, None
        for i in idx:
            v = g[i][i].valuation()
            if v < vdiag:
                vdiag, idiag = v, i
        voff, off = k, None
        for i in idx:
            for j in idx:
                if i != j:
                    v = g[i][j].valuation()
                    if v < voff:
                        voff, off = v, (i, j)
        if min(vdiag, voff) >= k:
            if len(idx) == t.n:
                raise SingularMatrix(f"matrix vanishes mod {p}^{k}")
            raise InsufficientPrecision(
                f"remaining block vanishes mod {p}^{k}; det valuation not certified below k"
            )
        if vdiag <= voff:
            i, v = idiag, vdiag
        else:
            # Off-diagonal pivot: convert to a diagonal one.  Both diagonal
            # entries are strictly deeper, so one of the trace combinations
            # for c in {1, w} keeps valuation exactly v (p is odd).
            i, j = off
            v = voff
            gji = g[j][i]
            if (2 * gji.a) % (p ** (v + 1)) != 0:
                c = ExtRingElem(params, 1, 0)
            else:
                c = ExtRingElem(params, 0, 1)
            new_row = {l: g[i][l] + c * g[j][l] for l in idx if l != i}
            cross = c * gji
            gii = g[i][i] + (c * c.conj()) * g[j][j] + cross + cross.conj()
            if gii.b != 0 or gii.valuation() != v:
                raise InsufficientPrecision("off-diagonal pivot conversion lost the valuation")
            for l in idx:
                if l != i:
                    g[i][l] = new_row[l]
                    g[l][i] = new_row[l].conj()
            g[i][i] = gii
        # Diagonal pivot at (i, i) with valuation v.
        exps.append(v)
        uinv = g[i][i].unit_part(v).inverse()
        rest = [l for l in idx if l != i]
        qs = {l: g[l][i].unit_part(v) for l in rest}
        pv = p**v
        for a in rest:
            for b in rest:
                # Schur complement g_ab - g_ai*g_ib/g_ii, organized as
                # p^v * (q_a * conj(q_b) / u) so it stays exact mod p^k.
                g[a][b] = g[a][b] - qs[a] * qs[b].conj() * uinv * pv
        idx = rest

    return tuple(sorted(exps))


def _det(t: HermMatrix) -> ExtRingElem:
    """Cofactor-expansion determinant (fine for the small sizes used here)."""
    n = t.n
    params = t.params

    def minor_det(rows, cols):
        if len(rows) == 1:
            return t.entries[rows[0]][cols[0]]
        acc = ExtRingElem(params, 0)
        r0 = rows[0]
        for pos, c in enumerate(cols):
            sub = minor_det(rows[1:], cols[:pos] + cols[pos + 1 :])
            term = t.entries[r0][c] * sub
            acc = acc + (term if pos % 2 == 0 else -term)
        return acc

    return minor_det(list(range(n)), list(range(n)))


def det_valuation(t: HermMatrix) -> int:
    """v_p(det T), certified below the precision k.

    The determinant of a hermitian matrix is fixed by the involution, so
    its w-part vanishes and the valuation is read off the main part.
    """
    d = _det(t)
    if d.is_zero():
        raise InsufficientPrecision(
            f"det T == 0 mod {t.params.p}^{t.params.k}; valuation not certified"
        )
    return d.valuation()
