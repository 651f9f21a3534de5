"""Exact pointwise calculus of lagrangian subspaces of C^{2n}.

Vectors split as tangent (+) cotangent: slots 0..n-1 are tangent, n..2n-1
cotangent.  The canonical pairing is the C-bilinear

    <X + xi, Y + eta> = 1/2 (eta(X) + xi(Y)).

Subspaces are kept in reduced row echelon form, so equality of subspaces is
equality of bases.  Real computations (hat, check, K, Delta, D) realify a
complex span into R^{2m} with layout [real parts | imaginary parts] and slice
out coordinate constraints by exact elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .scalars import GS_I, GS_ONE, GS_ZERO, GaussScalar

F0 = Fraction(0)
F1 = Fraction(1)
HALF = Fraction(1, 2)


class SubspaceReal:
    """Canonical rational subspace of R^m."""

    __slots__ = ("m", "basis")

    def __init__(self, m: int, gens: Sequence[Sequence[Fraction]]):
        for g in gens:
            if len(g) != m:
                raise ValueError(f"generator length {len(g)} != ambient {m}")
        red, _ = linalg.rref([[Fraction(x) for x in g] for g in gens])
        self.m = m
        self.basis = tuple(tuple(r) for r in red)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[Fraction]) -> bool:
        return linalg.member(list(v), [list(r) for r in self.basis])

    def __eq__(self, other):
        return (
            isinstance(other, SubspaceReal)
            and self.m == other.m
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.m, self.basis))

    def __repr__(self):
        return f"SubspaceReal(m={self.m}, dim={self.dim})"


class ComplexSubspace:
    """Canonical Gaussian-rational subspace of C^m."""

    __slots__ = ("m", "basis")

    def __init__(self, m: int, gens: Sequence[Sequence[GaussScalar]]):
        for g in gens:
            if len(g) != m:
                raise ValueError(f"generator length {len(g)} != ambient {m}")
        red, _ = linalg.rref([list(g) for g in gens])
        self.m = m
        self.basis = tuple(tuple(r) for r in red)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[GaussScalar]) -> bool:
        return linalg.member(list(v), [list(r) for r in self.basis])

    def __eq__(self, other):
        return (
            isinstance(other, ComplexSubspace)
            and self.m == other.m
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.m, self.basis))

    def __repr__(self):
        return f"ComplexSubspace(m={self.m}, dim={self.dim})"


def subspace_from_generators(gens, m: Optional[int] = None):
    """Canonical span of the generators; dispatches on the scalar type."""
    gens = [list(g) for g in gens]
    if m is None:
        if not gens:
            raise ValueError("ambient dimension required for empty generator list")
        m = len(gens[0])
    if any(isinstance(x, GaussScalar) for g in gens for x in g):
        gs = [[x if isinstance(x, GaussScalar) else GaussScalar.of(x) for x in g] for g in gens]
        return ComplexSubspace(m, gs)
    return SubspaceReal(m, [[Fraction(x) for x in g] for g in gens])


# -- pairing ----------------------------------------------------------------


def pairing(u: Sequence, v: Sequence, n: int):
    """<X+xi, Y+eta> = 1/2 (eta(X) + xi(Y)), C-bilinear."""
    acc = u[0] * 0
    for t in range(n):
        acc = acc + u[t] * v[n + t] + u[n + t] * v[t]
    return acc * HALF if isinstance(acc, Fraction) else acc * GaussScalar.of(HALF)


class Lagrangian:
    """Isotropic subspace of C^{2n} in canonical echelon form.

    Constructors check isotropy always; full dimension n unless the caller
    opts into an intermediate isotropic family (products can drop rank).
    """

    __slots__ = ("n", "space")

    def __init__(self, n: int, space: ComplexSubspace):
        self.n = n
        self.space = space

    @classmethod
    def from_generators(cls, n: int, gens, allow_partial: bool = False) -> "Lagrangian":
        space = ComplexSubspace(2 * n, [_gauss_row(g) for g in gens])
        for a in range(space.dim):
            for b in range(a, space.dim):
                if pairing(space.basis[a], space.basis[b], n):
                    raise ValueError("generators do not span an isotropic subspace")
        if space.dim != n and not allow_partial:
            raise ValueError(
                f"isotropic span has dimension {space.dim}, expected lagrangian "
                f"dimension {n}"
            )
        return cls(n, space)

    @property
    def basis(self):
        return self.space.basis

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def is_lagrangian(self) -> bool:
        return self.dim == self.n

    def contains(self, v) -> bool:
        return self.space.contains(_gauss_row(v))

    def __eq__(self, other):
        return (
            isinstance(other, Lagrangian)
            and self.n == other.n
            and self.space == other.space
        )

    def __hash__(self):
        return hash((self.n, self.space))

    def __repr__(self):
        return f"Lagrangian(n={self.n}, dim={self.dim}, basis={self.basis!r})"


def _gauss_row(g) -> List[GaussScalar]:
    return [x if isinstance(x, GaussScalar) else GaussScalar.of(x) for x in g]


# -- graphs -----------------------------------------------------------------


def graph(datum: Sequence[Sequence[GaussScalar]], kind: str) -> Lagrangian:
    """Graph lagrangian of a skew matrix, as a bivector or a two-form.

    bivector: {pi# xi + xi} with pi# xi = A xi;  twoform: {X + i_X w} with
    (i_X w)_j = sum_i X_i W_ij.
    """
    A = [_gauss_row(r) for r in datum]
    n = len(A)
    if not linalg.is_skew(A):
        raise ValueError(f"{kind} datum must be skew-symmetric")
    rows = []
    for k in range(n):
        e = [GS_ONE if t == k else GS_ZERO for t in range(n)]
        if kind == "bivector":
            tangent = [A[i][k] for i in range(n)]
            rows.append(tangent + e)
        elif kind == "twoform":
            cot = [A[k][j] for j in range(n)]
            rows.append(e + cot)
        else:
            raise ValueError(f"unknown graph kind {kind!r}")
    return Lagrangian.from_generators(n, rows)


def bivector_of_graph(L: Lagrangian) -> Optional[List[List[GaussScalar]]]:
    """Recover the skew matrix with L = graph(A, bivector); None if L meets T_C."""
    if not L.is_lagrangian:
        return None
    n = L.n
    cols = []
    for k in range(n):
        target = [GS_ONE if t == k else GS_ZERO for t in range(n)]
        combo = _solve_combo([list(r[n:]) for r in L.basis], target)
        if combo is None:
            return None
        tangent = [GS_ZERO] * n
        for c, row in zip(combo, L.basis):
            for i in range(n):
                tangent[i] = tangent[i] + c * row[i]
        cols.append(tangent)
    # cols[k] = A e_k
    return [[cols[k][i] for k in range(n)] for i in range(n)]


def _solve_combo(rows: List[List], target: List) -> Optional[List]:
    """Coefficients c with sum c_i rows[i] = target, or None."""
    if not rows:
        return None
    k = len(rows)
    m = len(target)
    # transpose system: for each coordinate j, sum_i c_i rows[i][j] = target[j]
    aug = [[rows[i][j] for i in range(k)] + [target[j]] for j in range(m)]
    red, pivots = linalg.rref(aug)
    if k in pivots:
        return None
    zero = target[0] * 0
    sol = [zero] * k
    for r, pc in zip(red, pivots):
        sol[pc] = r[k]
    return sol


# -- products ----------------------------------------------------------------


def products(kind: str, L1, L2) -> Lagrangian:
    """Tangent/cotangent products and their complex sums.

    tangent:  L1 * L2 = {X + eta1 + eta2 : X + eta1 in L1, X + eta2 in L2}
    cotangent: {X1 + X2 + eta : X1 + eta in L1, X2 + eta in L2}
    complex variants take real lagrangians (SubspaceReal in R^{2n}):
    L1 *_C L2 = (L1)_C * (i . (L2)_C), likewise with the cotangent product.
    """
    if kind in ("complex_tangent", "complex_cotangent"):
        c1 = complexify_real(L1)
        # the i-twist acts on the half that is summed by the product:
        # scalar_dot for the tangent product, scalar_bullet for the cotangent
        twist = "scalar_dot" if kind == "complex_tangent" else "scalar_bullet"
        c2 = transform(twist, GS_I, complexify_real(L2))
        base = "tangent" if kind == "complex_tangent" else "cotangent"
        return products(base, c1, c2)
    if kind not in ("tangent", "cotangent"):
        raise ValueError(f"unknown product kind {kind!r}")
    if L1.n != L2.n:
        raise ValueError("ambient dimension mismatch")
    n = L1.n
    B1 = [list(r) for r in L1.basis]
    B2 = [list(r) for r in L2.basis]
    k1, k2 = len(B1), len(B2)
    lo, hi = (0, n) if kind == "tangent" else (n, 2 * n)
    # matching constraint on the shared half
    cons = [
        [B1[i][s] for i in range(k1)] + [-B2[j][s] for j in range(k2)]
        for s in range(lo, hi)
    ]
    null = linalg.nullspace(cons, k1 + k2, GS_ONE, GS_ZERO)
    rows = []
    for coef in null:
        vec = [GS_ZERO] * (2 * n)
        for i in range(k1):
            for s in range(2 * n):
                vec[s] = vec[s] + coef[i] * B1[i][s]
        for j in range(k2):
            for s in range(2 * n):
                if lo <= s < hi:
                    continue  # shared half counted once
                vec[s] = vec[s] + coef[k1 + j] * B2[j][s]
        rows.append(vec)
    return Lagrangian.from_generators(n, rows, allow_partial=True)


def complexify_real(S) -> Lagrangian:
    """Complexification of a real lagrangian subspace of R^{2n}."""
    if isinstance(S, Lagrangian):
        return S
    if not isinstance(S, SubspaceReal) or S.m % 2 != 0:
        raise ValueError("expected a SubspaceReal in R^{2n}")
    n = S.m // 2
    return Lagrangian.from_generators(
        n, [[GaussScalar.of(x) for x in r] for r in S.basis], allow_partial=True
    )


# -- transforms ---------------------------------------------------------------


def transform(kind: str, datum, L: Lagrangian) -> Lagrangian:
    n = L.n
    rows = []
    if kind == "b_field":
        B = [_gauss_row(r) for r in datum]
        if not linalg.is_skew(B):
            raise ValueError("b_field datum must be skew")
        for r in L.basis:
            add = [
                sum((r[i] * B[i][j] for i in range(n)), start=GS_ZERO)
                for j in range(n)
            ]
            rows.append(list(r[:n]) + [r[n + j] + add[j] for j in range(n)])
    elif kind == "beta":
        P = [_gauss_row(r) for r in datum]
        if not linalg.is_skew(P):
            raise ValueError("beta datum must be skew")
        for r in L.basis:
            add = [
                sum((P[i][j] * r[n + j] for j in range(n)), start=GS_ZERO)
                for i in range(n)
            ]
            rows.append([r[i] + add[i] for i in range(n)] + list(r[n:]))
    elif kind == "scalar_dot":
        z = datum if isinstance(datum, GaussScalar) else GaussScalar.of(datum)
        for r in L.basis:
            rows.append(list(r[:n]) + [z * x for x in r[n:]])
    elif kind == "scalar_bullet":
        z = datum if isinstance(datum, GaussScalar) else GaussScalar.of(datum)
        for r in L.basis:
            rows.append([z * x for x in r[:n]] + list(r[n:]))
    elif kind == "conjugate":
        for r in L.basis:
            rows.append([x.conjugate() for x in r])
    else:
        raise ValueError(f"unknown transform kind {kind!r}")
    return Lagrangian.from_generators(n, rows, allow_partial=not L.is_lagrangian)


# -- realification and the hat/check/tilde families ---------------------------


def realify(L: Lagrangian) -> List[List[Fraction]]:
    """Real span of L in R^{4n}, layout [re parts | im parts]."""
    rows = []
    for r in L.basis:
        rows.append([x.re for x in r] + [x.im for x in r])
        rows.append([-x.im for x in r] + [x.re for x in r])
    red, _ = linalg.rref(rows)
    return red


def _slice_real(rows: List[List[Fraction]], zero_cols, keep_cols) -> SubspaceReal:
    """Intersect a real row span with {w[zero_cols] = 0}, project keep_cols."""
    k = len(rows)
    if k == 0:
        return SubspaceReal(len(keep_cols), [])
    cons = [[rows[i][c] for i in range(k)] for c in zero_cols]
    null = linalg.nullspace(cons, k, F1, F0)
    out = []
    for coef in null:
        vec = [
            sum((coef[i] * rows[i][c] for i in range(k)), start=F0)
            for c in keep_cols
        ]
        out.append(vec)
    return SubspaceReal(len(keep_cols), out)


def hat(L: Lagrangian) -> SubspaceReal:
    """{X + xi : exists eta, X + i xi + eta in L}, a real lagrangian."""
    n = L.n
    rows = realify(L)
    tang_im = list(range(2 * n, 3 * n))
    keep = list(range(0, n)) + list(range(3 * n, 4 * n))
    return _slice_real(rows, tang_im, keep)


def check(L: Lagrangian) -> SubspaceReal:
    """{X + xi : exists eta, X + xi + i eta in L}, a real lagrangian."""
    n = L.n
    rows = realify(L)
    tang_im = list(range(2 * n, 3 * n))
    keep = list(range(0, 2 * n))
    return _slice_real(rows, tang_im, keep)


def tilde(L: Lagrangian) -> Lagrangian:
    """check(L) *_C hat(L), the associated quasi-real lagrangian family."""
    return products("complex_tangent", check(L), hat(L))


def hat_cot(L: Lagrangian) -> SubspaceReal:
    """Cotangent-product mirror of hat: {X + xi : exists Y, iX + Y + xi in L}."""
    n = L.n
    rows = realify(L)
    cot_im = list(range(3 * n, 4 * n))
    keep = list(range(2 * n, 3 * n)) + list(range(n, 2 * n))
    return _slice_real(rows, cot_im, keep)


def check_cot(L: Lagrangian) -> SubspaceReal:
    """{X + xi : exists Y, X + iY + xi in L}."""
    n = L.n
    rows = realify(L)
    cot_im = list(range(3 * n, 4 * n))
    keep = list(range(0, 2 * n))
    return _slice_real(rows, cot_im, keep)


def tilde_cot(L: Lagrangian) -> Lagrangian:
    return products("complex_cotangent", check_cot(L), hat_cot(L))


# -- indices and distributions -------------------------------------------------


@dataclass(frozen=True)
class IndexRecord:
    real_index: int
    dim_range: int
    dim_delta: int
    dim_D: int
    kernel_dim: int


def tangent_range(L: Lagrangian) -> ComplexSubspace:
    n = L.n
    return ComplexSubspace(n, [list(r[:n]) for r in L.basis])


def real_points(E: ComplexSubspace) -> SubspaceReal:
    """E intersect R^m for a complex subspace E of C^m."""
    rows = []
    for r in E.basis:
        rows.append([x.re for x in r] + [x.im for x in r])
        rows.append([-x.im for x in r] + [x.re for x in r])
    red, _ = linalg.rref(rows)
    m = E.m
    return _slice_real(red, list(range(m, 2 * m)), list(range(0, m)))


def real_projection(E: ComplexSubspace) -> SubspaceReal:
    """D = {Re v : v in E}; spanned by real and imaginary parts of a basis."""
    rows = []
    for r in E.basis:
        rows.append([x.re for x in r])
        rows.append([x.im for x in r])
    return SubspaceReal(E.m, rows)


def indices(L: Lagrangian) -> IndexRecord:
    n = L.n
    rows = realify(L)
    real_part = _slice_real(rows, list(range(2 * n, 4 * n)), list(range(0, 2 * n)))
    E = tangent_range(L)
    delta = real_points(E)
    D = real_projection(E)
    # kernel: combinations with vanishing cotangent part
    cons = [[L.basis[i][n + t] for i in range(L.dim)] for t in range(n)]
    null = linalg.nullspace(cons, L.dim, GS_ONE, GS_ZERO)
    kernel_dim = len(ComplexSubspace(
        L.dim, null
    ).basis) if null else 0
    return IndexRecord(
        real_index=real_part.dim,
        dim_range=E.dim,
        dim_delta=delta.dim,
        dim_D=D.dim,
        kernel_dim=kernel_dim,
    )


def is_quasi_real(L: Lagrangian) -> bool:
    """True when the tangent range is the complexification of a real space."""
    E = tangent_range(L)
    D = real_projection(E)
    Dc = ComplexSubspace(
        L.n, [[GaussScalar.of(x) for x in row] for row in D.basis]
    )
    return E == Dc


def kernel_space(L: Lagrangian) -> ComplexSubspace:
    """L intersect T_C as a subspace of C^n (tangent coordinates)."""
    n = L.n
    cons = [[L.basis[i][n + t] for i in range(L.dim)] for t in range(n)]
    null = linalg.nullspace(cons, L.dim, GS_ONE, GS_ZERO)
    vecs = []
    for coef in null:
        vecs.append([
            sum((coef[i] * L.basis[i][t] for i in range(L.dim)), start=GS_ZERO)
            for t in range(n)
        ])
    return ComplexSubspace(n, vecs)


def k_and_perp(L: Lagrangian) -> Tuple[SubspaceReal, SubspaceReal]:
    """K = L intersect (real T + T*), and its pairing-orthogonal in R^{2n}."""
    n = L.n
    rows = realify(L)
    K = _slice_real(rows, list(range(2 * n, 4 * n)), list(range(0, 2 * n)))
    cons = [list(r[n:]) + list(r[:n]) for r in K.basis]
    perp_rows = linalg.nullspace(cons, 2 * n, F1, F0)
    return K, SubspaceReal(2 * n, perp_rows)


# -- two-form on the range -----------------------------------------------------


def element_with_tangent(rows: List[List], n: int, x: List) -> Optional[List]:
    """An element of span(rows) in C^{2n} (or R^{2n}) with tangent part x."""
    combo = _solve_combo([list(r[:n]) for r in rows], list(x))
    if combo is None:
        return None
    zero = x[0] * 0
    vec = [zero] * (2 * n)
    for c, row in zip(combo, rows):
        for s in range(2 * n):
            vec[s] = vec[s] + c * row[s]
    return vec


def two_form_on_range(rows: List[List], n: int, x: List, y: List):
    """eps(x, y) = xi(y) for the element x + xi of the lagrangian.

    Well-defined for x, y in the tangent range by isotropy.
    """
    el = element_with_tangent(rows, n, x)
    if el is None:
        raise ValueError("x is not in the tangent range")
    return sum((el[n + t] * y[t] for t in range(n)), start=x[0] * 0)


def lagrangian_from_range_form(
    E_basis: List[List[GaussScalar]], eps: List[List[GaussScalar]], n: int
) -> Lagrangian:
    """L(E, eps) = {X + xi : X in E, xi|_E = i_X eps}, with eps(v_a, v_b)
    given on the basis and the convention eps(X, w) = xi(w)."""
    k = len(E_basis)
    rows = []
    V = [list(v) for v in E_basis]
    for a in range(k):
        xi = _solve_linear(V, [eps[a][b] for b in range(k)], n)
        if xi is None:
            raise ValueError("inconsistent range form")
        rows.append(list(E_basis[a]) + xi)
    ann = linalg.nullspace(V, n, GS_ONE, GS_ZERO)
    for w in ann:
        rows.append([GS_ZERO] * n + list(w))
    return Lagrangian.from_generators(n, rows, allow_partial=True)


def _solve_linear(rows_mat: List[List], rhs: List, ncols: int) -> Optional[List]:
    """One solution xi of (rows_mat) xi = rhs, rows_mat k x ncols."""
    if not rows_mat:
        return [GS_ZERO] * ncols
    aug = [list(r) + [b] for r, b in zip(rows_mat, rhs)]
    red, pivots = linalg.rref(aug)
    if ncols in pivots:
        return None
    zero = rhs[0] * 0 if rhs else GS_ZERO
    sol = [zero] * ncols
    for r, pc in zip(red, pivots):
        sol[pc] = r[ncols]
    return sol


# -- images --------------------------------------------------------------------


def images(kind: str, A: Sequence[Sequence[GaussScalar]], L: Lagrangian) -> Lagrangian:
    """Backward/forward image of L along a linear map with matrix A (n x m).

    backward: result in C^{2m}: {X + A^T xi : A X + xi in L (ambient n)}.
    forward:  result in C^{2n}: {A X + xi : X + A^T xi in L (ambient m)}.
    """
    A = [_gauss_row(r) for r in A]
    nrows = len(A)
    mcols = len(A[0]) if A else 0
    k = L.dim
    B = [list(r) for r in L.basis]
    if kind == "backward":
        if L.n != nrows:
            raise ValueError("backward: L must live over the codomain")
        n, m = nrows, mcols
        # unknowns: X in C^m, z in C^k with A X = tangent(sum z_i b_i)
        cons = [
            [A[t][c] for c in range(m)] + [-B[i][t] for i in range(k)]
            for t in range(n)
        ]
        null = linalg.nullspace(cons, m + k, GS_ONE, GS_ZERO)
        rows = []
        for sol in null:
            X = sol[:m]
            z = sol[m:]
            eta = [
                sum((z[i] * B[i][n + t] for i in range(k)), start=GS_ZERO)
                for t in range(n)
            ]
            At_eta = [
                sum((A[t][c] * eta[t] for t in range(n)), start=GS_ZERO)
                for c in range(m)
            ]
            rows.append(list(X) + At_eta)
        return Lagrangian.from_generators(m, rows, allow_partial=True)
    if kind == "forward":
        if L.n != mcols:
            raise ValueError("forward: L must live over the domain")
        n, m = nrows, mcols
        # unknowns: xi in C^n, z in C^k with cot(sum z_i b_i) = A^T xi
        cons = [
            [-A[t][c] for t in range(n)] + [B[i][m + c] for i in range(k)]
            for c in range(m)
        ]
        null = linalg.nullspace(cons, n + k, GS_ONE, GS_ZERO)
        rows = []
        for sol in null:
            xi = sol[:n]
            z = sol[n:]
            X = [
                sum((z[i] * B[i][c] for i in range(k)), start=GS_ZERO)
                for c in range(m)
            ]
            AX = [
                sum((A[t][c] * X[c] for c in range(m)), start=GS_ZERO)
                for t in range(n)
            ]
            rows.append(AX + list(xi))
        return Lagrangian.from_generators(n, rows, allow_partial=True)
    raise ValueError(f"unknown image kind {kind!r}")
