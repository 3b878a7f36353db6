"""Integrals, the modulus, unimodularity, and the distinguished action.

A left integral c satisfies h c = eps(h) c for all h; the space of left
(and of right) integrals is one-dimensional for a valid input, and the
modulus is the algebra morphism gamma with c h = gamma(h) c.  The
distinguished invertible module acts by gamma^{-1} = gamma o S.
"""

from .errors import DegenerateIntegralSpace, PresentationError
from .linalg import nullspace
from .qha import LinearForm


class IntegralData:

    def __init__(self, left_integral, right_integral, modulus, modulus_inv,
                 unimodular):
        self.left_integral = left_integral
        self.right_integral = right_integral
        self.modulus = modulus
        self.modulus_inv = modulus_inv
        self.unimodular = unimodular


def integrals(A):
    """Solve both integral spaces and read off the modulus; cached."""
    return A.cache("integrals", lambda: _integrals(A))


def _integrals(A):
    d = A.dim
    field = A.field
    c_left = _solve_regular(A, side="left")
    c_right = _solve_regular(A, side="right")

    j0 = next(i for i, c in enumerate(c_left.coeffs) if c)
    pivot_inv = c_left.coeffs[j0].inverse()
    gamma_vals = []
    for i in range(d):
        prod = A.product(c_left, A.basis_el(i))
        g_i = prod.coeffs[j0] * pivot_inv
        if prod != c_left.scale(g_i):
            raise DegenerateIntegralSpace(
                "left integral does not absorb right multiplication")
        gamma_vals.append(g_i)
    gamma = LinearForm(A, gamma_vals)

    one_idx_val = gamma(A.one())
    if not one_idx_val.is_one():
        raise DegenerateIntegralSpace("modulus is not unital")
    for i in range(d):
        for j in range(d):
            if gamma(A.product(A.basis_el(i), A.basis_el(j))) \
                    != gamma_vals[i] * gamma_vals[j]:
                raise DegenerateIntegralSpace(
                    "modulus is not an algebra morphism at (%d, %d)" % (i, j))

    gamma_inv = LinearForm(
        A, [gamma(A.apply_antipode(A.basis_el(i))) for i in range(d)])
    gamma_inv_2 = LinearForm(
        A, [gamma(A.apply_antipode(A.basis_el(i), -1)) for i in range(d)])
    assert gamma_inv == gamma_inv_2, "gamma o S != gamma o S^{-1}"
    # gamma^{-1} really is the convolution inverse on group-like arguments:
    # cross-check via the right integral, h c^r = gamma(S(h)) c^r
    k0 = next(i for i, c in enumerate(c_right.coeffs) if c)
    for i in range(d):
        prod = A.product(A.basis_el(i), c_right)
        if prod != c_right.scale(gamma_inv.values[i]):
            raise DegenerateIntegralSpace(
                "right integral inconsistent with the modulus")

    unimodular = gamma == A.counit_form()
    if A.modulus_hint is not None:
        hinted = LinearForm(A, A.modulus_hint)
        if hinted != gamma:
            raise PresentationError("supplied modulus hint is wrong")
    return IntegralData(c_left, c_right, gamma, gamma_inv, unimodular)


def _solve_regular(A, side):
    """Kernel of the stacked absorption conditions; must be 1-dimensional."""
    d = A.dim
    rows = []
    for j in range(d):
        eps_j = A.counit[j]
        row_per_k = [dict() for _ in range(d)]
        for m in range(d):
            pair = (A.ptable.mul_basis(j, m) if side == "left"
                    else A.ptable.mul_basis(m, j))
            for k, c in pair:
                row_per_k[k][m] = row_per_k[k].get(m, A.field.zero) + c
        if eps_j:
            for k in range(d):
                row_per_k[k][k] = row_per_k[k].get(k, A.field.zero) - eps_j
        rows.extend(r for r in row_per_k)
    basis = nullspace(rows, d, A.field)
    if len(basis) != 1:
        raise DegenerateIntegralSpace(
            "%s integral space has dimension %d" % (side, len(basis)))
    return A.el(basis[0])


def distinguished_action(A, data=None):
    """gamma^{-1} = gamma o S, the action of the distinguished module."""
    if data is None:
        data = integrals(A)
    return data.modulus_inv
