"""Complex Poisson bivectors: integrability tests, Hamiltonian fields,
Casimirs, the one-form bracket, and the standard constructors.

Sharp convention used everywhere in this package: writing pi as a coefficient
matrix A (A[i][j] = component on e_i ^ e_j, skew), the anchor acts by plain
matrix-vector product, (pi# xi)_i = sum_j A[i][j] xi_j.  Equivalently
(u ^ v)#(xi) = xi(v) u - xi(u) v, and pi(alpha, beta) = alpha(pi# beta).
Hamiltonian fields are X_h = pi#(T_C h), which gives X_h(f) = {f, h}.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from .fields import (
    FormField,
    MultiField,
    apply_to_forms,
    complex_differential,
    contract_form,
    decompose,
    lie_derivative,
    schouten,
    wedge,
)
from .poly import Chart, Poly, poly_partial
from .scalars import GS_I, GaussScalar


class ComplexBivector:
    """A degree-2 MultiField with cached real/imaginary parts."""

    __slots__ = ("body", "pi1", "pi2")

    def __init__(self, body: MultiField):
        if body.degree != 2:
            raise ValueError("ComplexBivector needs a degree-2 MultiField")
        self.body = body
        self.pi1, self.pi2 = decompose(body)

    @property
    def chart(self) -> Chart:
        return self.body.chart

    def __eq__(self, other):
        return isinstance(other, ComplexBivector) and self.body == other.body

    def __hash__(self):
        return hash(self.body)

    def __str__(self):
        return str(self.body)

    def coeff_matrix(self) -> List[List[Poly]]:
        """Full skew matrix of Poly entries, A[i][j] = pi(dx_i, dx_j)."""
        n = self.chart.dim
        zero = Poly.zero(self.chart)
        A = [[zero for _ in range(n)] for _ in range(n)]
        for (i, j), p in self.body.comps.items():
            A[i][j] = p
            A[j][i] = -p
        return A

    def sharp(self, alpha: FormField) -> MultiField:
        """pi#(alpha) for a degree-1 form with Poly coefficients."""
        if alpha.degree != 1 or alpha.chart != self.chart:
            raise ValueError("sharp expects a one-form on the same chart")
        A = self.coeff_matrix()
        n = self.chart.dim
        comps: Dict[Tuple[int, ...], Poly] = {}
        for i in range(n):
            acc = Poly.zero(self.chart)
            for j in range(n):
                aj = alpha.component((j,))
                if aj.is_zero() or A[i][j].is_zero():
                    continue
                acc = acc + A[i][j] * aj
            comps[(i,)] = acc
        return MultiField(self.chart, 1, comps)

    def pairing(self, alpha: FormField, beta: FormField) -> MultiField:
        """pi(alpha, beta) as a degree-0 field."""
        val = apply_to_forms(self.body, [alpha, beta])
        return MultiField.function(self.chart, val)


def bivector_from_brackets(chart: Chart, entries: Dict[Tuple[int, int], Poly]) -> ComplexBivector:
    """Build pi from coordinate brackets {x_i, x_j} for i < j (0-based)."""
    return ComplexBivector(MultiField(chart, 2, entries))


# -- integrability ----------------------------------------------------------


def jacobi_residual(pi: ComplexBivector) -> MultiField:
    """[pi, pi]; vanishes exactly when pi is Poisson."""
    return schouten(pi.body, pi.body)


def pair_conditions(pi: ComplexBivector) -> Tuple[MultiField, MultiField]:
    """([pi1, pi2], [pi1, pi1] - [pi2, pi2]); both zero iff Poisson."""
    first = schouten(pi.pi1, pi.pi2)
    second = schouten(pi.pi1, pi.pi1) - schouten(pi.pi2, pi.pi2)
    return first, second


def jacobi_pde_residuals(pi: ComplexBivector) -> List[Tuple[Tuple[int, int, int], int, Poly]]:
    """Real/imaginary Jacobi PDE residuals per coordinate triple i<j<k.

    Entry ((i,j,k), s, residual) with s=1 the real equation and s=2 the
    imaginary one.  These are the real and imaginary parts of the coordinate
    Jacobiator sum_l (pi_il d_l pi_jk + pi_kl d_l pi_ij + pi_jl d_l pi_ki).
    """
    chart = pi.chart
    n = chart.dim
    A1 = [[p for p in row] for row in _part_matrix(pi.pi1, chart)]
    A2 = _part_matrix(pi.pi2, chart)
    out: List[Tuple[Tuple[int, int, int], int, Poly]] = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                r1 = Poly.zero(chart)
                r2 = Poly.zero(chart)
                for (a, b, c) in ((i, j, k), (k, i, j), (j, k, i)):
                    for l, name in enumerate(chart.vars):
                        d1 = poly_partial(A1[b][c], name)
                        d2 = poly_partial(A2[b][c], name)
                        r1 = r1 + A1[a][l] * d1 - A2[a][l] * d2
                        r2 = r2 + A2[a][l] * d1 + A1[a][l] * d2
                out.append(((i, j, k), 1, r1))
                out.append(((i, j, k), 2, r2))
    return out


def _part_matrix(part: MultiField, chart: Chart) -> List[List[Poly]]:
    n = chart.dim
    zero = Poly.zero(chart)
    A = [[zero for _ in range(n)] for _ in range(n)]
    for (i, j), p in part.comps.items():
        A[i][j] = p
        A[j][i] = -p
    return A


# -- brackets and Hamiltonian fields ----------------------------------------


def bracket_of_functions(pi: ComplexBivector, f: MultiField, g: MultiField) -> MultiField:
    """{f, g} = pi(T_C f, T_C g)."""
    if f.degree != 0 or g.degree != 0:
        raise ValueError("bracket_of_functions expects degree-0 fields")
    return pi.pairing(complex_differential(f), complex_differential(g))


def hamiltonian(pi: ComplexBivector, h: MultiField) -> MultiField:
    """X_h = pi#(T_C h), so that X_h(f) = {f, h}."""
    if h.degree != 0:
        raise ValueError("hamiltonian expects a degree-0 field")
    return pi.sharp(complex_differential(h))


def casimir_residual(pi: ComplexBivector, c: MultiField) -> MultiField:
    """pi#(T_C c); zero iff c is a Casimir function."""
    if c.degree != 0:
        raise ValueError("casimir_residual expects a degree-0 field")
    return pi.sharp(complex_differential(c))


def apply_vector(z: MultiField, f: MultiField) -> MultiField:
    """z(f) for a degree-1 field acting on a degree-0 field."""
    return MultiField.function(
        z.chart, contract_form(complex_differential(f), z).component(())
    )


def cotangent_bracket(pi: ComplexBivector, a: FormField, b: FormField) -> FormField:
    """[a, b]_pi = L_{pi#b} a - L_{pi#a} b - T_C pi(a, b).

    The orientation matches the sharp convention a(pi#b) = pi(a, b): exact
    one-forms satisfy [T_C f, T_C g]_pi = T_C {f, g}, and the sharp map is an
    anti-morphism, pi#[a, b]_pi = -[pi#a, pi#b].
    """
    if a.degree != 1 or b.degree != 1:
        raise ValueError("cotangent_bracket expects one-forms")
    la = lie_derivative(pi.sharp(a), b)
    lb = lie_derivative(pi.sharp(b), a)
    return lb - la - complex_differential(pi.pairing(a, b))


# -- constructors ------------------------------------------------------------


def construct(kind: str, *args) -> ComplexBivector:
    """Named constructors: complexify, twist, diagonal, conjugate, two_param,
    nijenhuis."""
    if kind == "complexify":
        (sigma,) = args
        return ComplexBivector(_real_body(sigma))
    if kind == "twist":
        (sigma,) = args
        return ComplexBivector(_real_body(sigma).scale(GS_I))
    if kind == "diagonal":
        (sigma,) = args
        body = _real_body(sigma)
        return ComplexBivector(body + body.scale(GS_I))
    if kind == "conjugate":
        (pi,) = args
        return ComplexBivector(pi.body.conjugate())
    if kind == "two_param":
        pi1, pi2, mu, lam = args
        body = _real_body(pi1).scale(mu) + _real_body(pi2).scale(GS_I * lam)
        return ComplexBivector(body)
    if kind == "nijenhuis":
        sigma, N = args
        body = _real_body(sigma)
        NA = _nijenhuis_matrix(body, N)
        n = body.chart.dim
        comps: Dict[Tuple[int, int], Poly] = {}
        for i in range(n):
            for j in range(i + 1, n):
                if not (NA[i][j] + NA[j][i]).is_zero():
                    raise ValueError(
                        "N o sigma# is not skew: (sigma, N) is not a compatible "
                        "Poisson-Nijenhuis pair"
                    )
                comps[(i, j)] = NA[i][j]
        sigmaN = MultiField(body.chart, 2, comps)
        return ComplexBivector(body + sigmaN.scale(GS_I))
    raise ValueError(f"unknown constructor kind {kind!r}")


def _real_body(sigma) -> MultiField:
    body = sigma.body if isinstance(sigma, ComplexBivector) else sigma
    re, im = decompose(body)
    if not im.is_zero():
        raise ValueError("constructor expects a real bivector")
    return re


def _nijenhuis_matrix(body: MultiField, N: Sequence[Sequence[Poly]]) -> List[List[Poly]]:
    """Matrix of (N o sigma#): rows N applied to the columns of A."""
    chart = body.chart
    n = chart.dim
    if len(N) != n or any(len(row) != n for row in N):
        raise ValueError(f"N must be a {n}x{n} matrix of Polys")
    A = _part_matrix(body, chart)
    out = [[Poly.zero(chart) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = Poly.zero(chart)
            for k in range(n):
                acc = acc + N[i][k] * A[k][j]
            out[i][j] = acc
    return out


def nijenhuis_residuals(sigma, N) -> Tuple[List[List[Poly]], List[FormField]]:
    """Compatibility residuals for a would-be Poisson-Nijenhuis pair.

    First: the matrix of sigma# N* - N sigma#.  Second: the one-form bracket
    residuals [a,b]_{sigma_N} - ([N*a,b]_sigma + [a,N*b]_sigma - N*[a,b]_sigma)
    on all coordinate one-form pairs (sufficient by bilinearity and Leibniz).
    """
    body = _real_body(sigma)
    chart = body.chart
    n = chart.dim
    A = _part_matrix(body, chart)
    # sigma# N* has matrix A N^T; N sigma# has matrix N A.
    first = [[Poly.zero(chart) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = Poly.zero(chart)
            for k in range(n):
                acc = acc + A[i][k] * N[j][k] - N[i][k] * A[k][j]
            first[i][j] = acc

    NA = _nijenhuis_matrix(body, N)
    sig = ComplexBivector(body)

    def nstar(alpha: FormField) -> FormField:
        # (N* a)_j = sum_i a_i N_ij
        comps = {}
        for j in range(n):
            acc = Poly.zero(chart)
            for i in range(n):
                ai = alpha.component((i,))
                if ai.is_zero():
                    continue
                acc = acc + ai * N[i][j]
            comps[(j,)] = acc
        return FormField(chart, 1, comps)

    second: List[FormField] = []
    for i in range(n):
        for j in range(i + 1, n):
            a = FormField(chart, 1, {(i,): Poly.const(chart, 1)})
            b = FormField(chart, 1, {(j,): Poly.const(chart, 1)})
            lhs = _bracket_by_sharp(chart, NA, a, b)
            rhs = (
                cotangent_bracket(sig, nstar(a), b)
                + cotangent_bracket(sig, a, nstar(b))
                - nstar(cotangent_bracket(sig, a, b))
            )
            second.append(lhs - rhs)
    return first, second


def _bracket_by_sharp(chart: Chart, M: List[List[Poly]], a: FormField, b: FormField) -> FormField:
    """One-form bracket driven by an explicit (possibly non-skew) sharp matrix."""

    def sh(alpha: FormField) -> MultiField:
        comps = {}
        for i in range(chart.dim):
            acc = Poly.zero(chart)
            for j in range(chart.dim):
                aj = alpha.component((j,))
                if aj.is_zero() or M[i][j].is_zero():
                    continue
                acc = acc + M[i][j] * aj
            comps[(i,)] = acc
        return MultiField(chart, 1, comps)

    def pair(alpha: FormField, beta: FormField) -> MultiField:
        acc = Poly.zero(chart)
        for i in range(chart.dim):
            ai = alpha.component((i,))
            if ai.is_zero():
                continue
            for j in range(chart.dim):
                bj = beta.component((j,))
                if bj.is_zero() or M[i][j].is_zero():
                    continue
                acc = acc + ai * M[i][j] * bj
        return MultiField.function(chart, acc)

    return (
        lie_derivative(sh(b), a)
        - lie_derivative(sh(a), b)
        - complex_differential(pair(a, b))
    )
