"""Derived elements of a quasi-Hopf algebra.

Everything here is built from the structure constants exactly as the
defining formulas read: the four elements qR, pR, qL, pL, the two
closed forms of the auxiliary elements eps/delta (computed both ways and
compared, raising InternalInconsistency on disagreement), the Drinfeld
twist f and its right-dual companion fr, the coaction elements U, V and
the elements u, and the pivot-dependent elements used by the bijection
maps between cointegral flavours.

The order-5 tensors behind the monadic cointegral equations are exposed
as contraction data rather than materialized against a dense basis.
"""

from .errors import InternalInconsistency, NoPivot
from .linalg import TensorElement
from .qha import TREE_LL, AlgebraElement


class DerivedElements:
    """Cached bundle of every derived element for one algebra."""

    def __init__(self, A):
        self.algebra = A
        self.qR, self.pR, self.qL, self.pL = qp_elements(A)
        self.eps_el, self.delta_el = eps_delta(A, self.qR, self.pR,
                                               self.qL, self.pL)
        self.f, self.f_inv, self.fr, self.fr_inv = _twists(
            A, self.qR, self.pR, self.qL, self.pL, self.eps_el, self.delta_el)
        self.U, self.Ucop, self.V, self.Vcop = _coaction_elements(
            A, self.qR, self.pR, self.qL, self.pL, self.f, self.f_inv)
        from .integrals import integrals as _integrals
        idata = _integrals(A)
        self.integral_data = idata
        gamma, gamma_inv = idata.modulus, idata.modulus_inv
        self.gamma, self.gamma_inv = gamma, gamma_inv
        self.u = A.element_from_tensor(
            self.V.apply_map(1, A.s_cols).apply_map(1, A.s_cols)
            .apply_functional(0, gamma.values))
        self.u_cop = A.element_from_tensor(
            self.Vcop.apply_map(1, A.s_inv_cols).apply_map(1, A.s_inv_cols)
            .apply_functional(0, gamma.values))
        self.u_inv = A.element_inverse(self.u)
        self.ucop_inv = A.element_inverse(self.u_cop)
        self.xi = A.element_from_tensor(
            self.f_inv.apply_functional(1, gamma.values))
        self.xi_hat = A.element_from_tensor(
            self.f_inv.apply_map(0, A.s_inv_cols)
            .apply_functional(1, gamma_inv.values))
        if A.pivot is not None:
            self.pivot_el = AlgebraElement(A, A.pivot.entries)
            self.pivot_inv = A.element_inverse(self.pivot_el)
            self.theta = A.element_from_tensor(
                self.pL.apply_map(1, A.s_inv_cols)
                .apply_functional(0, gamma_inv.values))
            self.theta_hat = A.element_from_tensor(
                self.pR.apply_map(0, A.s_cols)
                .apply_functional(1, gamma_inv.values))
        else:
            self.pivot_el = self.pivot_inv = None
            self.theta = self.theta_hat = None
        self._tau = None
        self._sigma = None
        self._eq_tensors = {}

    # -- the order-5 tensors, assembled lazily --------------------------------

    @property
    def tau(self):
        if self._tau is None:
            self._tau = _build_tau(self.algebra)
        return self._tau

    @property
    def sigma(self):
        if self._sigma is None:
            self._sigma = _build_sigma(self.algebra)
        return self._sigma

    def equation_tensor(self, i):
        """Order-4 contraction data for the monadic equation of type i.

        Legs (L1, L2, R1, R2): the defining right-hand side evaluates, for
        h in H, to sum over terms of  (L1 h_(1) R1) (x) (L2 h_(2) R2), with
        the modulus-inverse weight folded in.  The linear form is applied
        to the first tensor leg for i in {1, 2} and to the second for
        i in {3, 4}.
        """
        G = self._eq_tensors.get(i)
        if G is not None:
            return G
        A = self.algebra
        ginv = self.gamma_inv.values
        if i in (1, 2):
            W = self.tau.apply_functional(2, ginv)
            W = W.permute((1, 0, 2, 3))        # legs (tau2, tau1, tau4, tau5)
        elif i in (3, 4):
            W = self.sigma.apply_functional(2, ginv)
            W = W.permute((3, 2, 0, 1))        # legs (sig5, sig4, sig1, sig2)
        else:
            raise ValueError("monadic type must be 1..4")
        cols = A.s_cols if i in (2, 4) else A.s_inv_cols
        W = W.apply_map(0, cols).apply_map(1, cols)
        twist = self.f if i in (2, 4) else self.fr
        X = W.tensor(twist)                     # legs (a, b, c, d, t1, t2)
        X = X.merge_mul(0, 4, A.ptable)         # a*t1
        G = X.merge_mul(1, 4, A.ptable)         # b*t2
        self._eq_tensors[i] = G
        return G

    def lam_leg(self, i):
        """Which tensor leg of the equation the linear form consumes."""
        return 0 if i in (1, 2) else 1

    def equation_lhs(self, i):
        """The fixed element multiplying lambda(h) on the left-hand side."""
        A = self.algebra
        alpha_el = AlgebraElement(A, A.alpha.entries)
        if i == 2:
            return alpha_el
        if i == 1:
            if self.pivot_inv is None:
                raise NoPivot("type-1 equation needs a pivot")
            return self.pivot_inv * alpha_el
        s_inv_alpha = A.apply_antipode(alpha_el, -1)
        if i == 3:
            return s_inv_alpha
        if i == 4:
            if self.pivot_el is None:
                raise NoPivot("type-4 equation needs a pivot")
            return self.pivot_el * s_inv_alpha
        raise ValueError("monadic type must be 1..4")


def derived(A):
    """The DerivedElements bundle of an algebra, built once and cached."""
    return A.cache("derived", lambda: DerivedElements(A))


# -- q/p elements -------------------------------------------------------------

def qp_elements(A):
    """The four elements built from the coassociator and alpha/beta."""
    one = A.field.one
    alpha = dict((i, c) for i, c in A.alpha.items())
    beta = dict((i, c) for i, c in A.beta.items())
    pt = A.ptable

    def sv(i):
        return {i: one}

    def s_op(sp, power=1):
        cols = A.s_cols if power > 0 else A.s_inv_cols
        out = {}
        for i, c in sp.items():
            for i2, cm in cols[i]:
                v = out.get(i2)
                nv = c * cm if v is None else v + c * cm
                if nv:
                    out[i2] = nv
                elif i2 in out:
                    del out[i2]
        return out

    def chain(*sps):
        out = sps[0]
        for sp in sps[1:]:
            out = pt.mul_sparse(out, sp)
        return out

    qR = {}
    pLd = {}
    for (a, b, c3), coef in A.coassociator_inv.terms.items():
        leg2 = chain(s_op(chain(alpha, sv(c3)), -1), sv(b))
        _acc2(qR, sv(a), leg2, coef)
        leg1 = chain(sv(b), s_op(chain(sv(a), beta), -1))
        _acc2(pLd, leg1, sv(c3), coef)
    qLd = {}
    pRd = {}
    for (a, b, c3), coef in A.coassociator.terms.items():
        leg1 = chain(s_op(sv(a)), alpha, sv(b))
        _acc2(qLd, leg1, sv(c3), coef)
        leg2 = chain(sv(b), beta, s_op(sv(c3)))
        _acc2(pRd, sv(a), leg2, coef)
    mk = lambda d: _tensor2(A, d)
    return mk(qR), mk(pRd), mk(qLd), mk(pLd)


def _acc2(out, sp1, sp2, coef):
    for i, c1 in sp1.items():
        for j, c2 in sp2.items():
            key = (i, j)
            v = out.get(key)
            nv = coef * c1 * c2 if v is None else v + coef * c1 * c2
            if nv:
                out[key] = nv
            elif key in out:
                del out[key]


def _tensor2(A, terms):
    t = TensorElement(2, A.dim, A.field)
    t.terms = dict((k, v) for k, v in terms.items() if v)
    return t


# -- eps and delta, both printed forms ------------------------------------------

def eps_delta(A, qR, pR, qL, pL):
    """Both auxiliary twist factors; each has two closed forms which must agree."""
    eps_a = _eps_form_a(A, qL)
    eps_b = _eps_form_b(A, qR)
    if eps_a != eps_b:
        raise InternalInconsistency("the two closed forms of eps disagree")
    delta_a = _delta_form_a(A, pR)
    delta_b = _delta_form_b(A, pL)
    if delta_a != delta_b:
        raise InternalInconsistency("the two closed forms of delta disagree")
    return eps_a, delta_a


def _eps_form_a(A, qL):
    # S(psi_2) qL_1 (psi_3)_(1)  (x)  S(psi_1) alpha qL_2 (psi_3)_(2)
    T = A.coassociator_inv.tensor(qL)          # (p1, p2, p3, q1, q2)
    T = T.apply_coproduct(2, A.cop)            # (p1, p2, p3a, p3b, q1, q2)
    T = T.apply_map(0, A.s_cols).apply_map(1, A.s_cols)
    alpha_t = _vec_tensor(A, A.alpha)
    T = T.tensor(alpha_t)                      # (..., al)
    T = T.merge_mul(4, 2, A.ptable)            # q1*p3a -> slot 2
    #   legs now (Sp1, Sp2, q1*p3a, p3b, q2, al)
    T = T.merge_mul(0, 5, A.ptable)            # Sp1*al -> slot 0
    #   legs (Sp1*al, Sp2, q1p3a, p3b, q2)
    T = T.merge_mul(0, 4, A.ptable)            # *q2
    T = T.merge_mul(0, 3, A.ptable)            # *p3b -> leg2 complete at slot 0
    T = T.merge_mul(1, 2, A.ptable)            # Sp2*(q1p3a) -> leg1 at slot 1
    return T.permute((1, 0))


def _eps_form_b(A, qR):
    # S(qR_2 (Phi_1)_(2)) Phi_2  (x)  S(qR_1 (Phi_1)_(1)) alpha Phi_3
    T = A.coassociator.tensor(qR)              # (A1, A2, A3, q1, q2)
    T = T.apply_coproduct(0, A.cop)            # (A1a, A1b, A2, A3, q1, q2)
    T = T.merge_mul(5, 1, A.ptable)            # q2*A1b -> slot 1
    #   legs (A1a, q2*A1b, A2, A3, q1)
    T = T.merge_mul(4, 0, A.ptable)            # q1*A1a -> slot 0
    #   legs (q1*A1a, q2A1b, A2, A3)
    T = T.apply_map(0, A.s_cols).apply_map(1, A.s_cols)
    alpha_t = _vec_tensor(A, A.alpha)
    T = T.tensor(alpha_t)                      # (S(q1A1a), S(q2A1b), A2, A3, al)
    T = T.merge_mul(1, 2, A.ptable)            # S(q2A1b)*A2 -> leg1 at slot 1
    #   legs (S(q1A1a), leg1, A3, al)
    T = T.merge_mul(0, 3, A.ptable)            # S(q1A1a)*al
    T = T.merge_mul(0, 2, A.ptable)            # *A3 -> leg2 at slot 0
    return T.permute((1, 0))


def _delta_form_a(A, pR):
    # (psi_1)_(1) pR_1 beta S(psi_3)  (x)  (psi_1)_(2) pR_2 S(psi_2)
    T = A.coassociator_inv.tensor(pR)          # (p1, p2, p3, r1, r2)
    T = T.apply_coproduct(0, A.cop)            # (p1a, p1b, p2, p3, r1, r2)
    T = T.apply_map(2, A.s_cols).apply_map(3, A.s_cols)
    beta_t = _vec_tensor(A, A.beta)
    T = T.tensor(beta_t)                       # (p1a, p1b, Sp2, Sp3, r1, r2, be)
    T = T.merge_mul(0, 4, A.ptable)            # p1a*r1
    #   legs (p1a*r1, p1b, Sp2, Sp3, r2, be)
    T = T.merge_mul(0, 5, A.ptable)            # *beta
    T = T.merge_mul(0, 3, A.ptable)            # *S(psi_3) -> leg1 done at 0
    #   legs (leg1, p1b, Sp2, r2)
    T = T.merge_mul(1, 3, A.ptable)            # p1b*r2
    T = T.merge_mul(1, 2, A.ptable)            # *S(psi_2) -> leg2 at slot 1
    return T


def _delta_form_b(A, pL):
    # Phi_1 beta S((Phi_3)_(2) pL_2)  (x)  Phi_2 S((Phi_3)_(1) pL_1)
    T = A.coassociator.tensor(pL)              # (A1, A2, A3, l1, l2)
    T = T.apply_coproduct(2, A.cop)            # (A1, A2, A3a, A3b, l1, l2)
    T = T.merge_mul(2, 4, A.ptable)            # A3a*l1 -> slot 2
    #   legs (A1, A2, A3a*l1, A3b, l2)
    T = T.merge_mul(3, 4, A.ptable)            # A3b*l2 -> slot 3
    T = T.apply_map(2, A.s_cols).apply_map(3, A.s_cols)
    beta_t = _vec_tensor(A, A.beta)
    T = T.tensor(beta_t)                       # (A1, A2, S(A3a l1), S(A3b l2), be)
    T = T.merge_mul(0, 4, A.ptable)            # A1*beta
    T = T.merge_mul(0, 3, A.ptable)            # *S(A3b*pL2) -> leg1 at 0
    #   legs (leg1, A2, S(A3a l1))
    T = T.merge_mul(1, 2, A.ptable)            # A2*S(A3a*pL1) -> leg2 at 1
    return T


def _vec_tensor(A, vec):
    t = TensorElement(1, A.dim, A.field)
    t.terms = dict(((i,), c) for i, c in vec.items())
    return t


# -- the Drinfeld twists ----------------------------------------------------------

def _twists(A, qR, pR, qL, pL, eps_el, delta_el):
    pt = A.ptable
    f = TensorElement(2, A.dim, A.field)
    for (r1, r2), c in pR.terms.items():
        t1 = A.delta(A.basis_el(r1)).permute((1, 0))
        t1 = t1.apply_map(0, A.s_cols).apply_map(1, A.s_cols)
        t2 = A.delta(A.basis_el(r2))
        f = f + t1.mul(eps_el, pt).mul(t2, pt).scale(c)
    f_inv = TensorElement(2, A.dim, A.field)
    for (q1, q2), c in qL.terms.items():
        t1 = A.delta(A.basis_el(q1))
        t2 = A.delta(A.basis_el(q2)).permute((1, 0))
        t2 = t2.apply_map(0, A.s_cols).apply_map(1, A.s_cols)
        f_inv = f_inv + t1.mul(delta_el, pt).mul(t2, pt).scale(c)
    unit2 = A.unit_tensor(2)
    if f.mul(f_inv, pt) != unit2 or f_inv.mul(f, pt) != unit2:
        raise InternalInconsistency("Drinfeld twist is not invertible as built")
    eps21 = eps_el.permute((1, 0))
    fr = TensorElement(2, A.dim, A.field)
    for (l1, l2), c in pL.terms.items():
        inner = eps21.mul(A.delta(A.basis_el(l1)).permute((1, 0)), pt)
        inner = inner.apply_map(0, A.s_inv_cols).apply_map(1, A.s_inv_cols)
        fr = fr + inner.mul(A.delta(A.basis_el(l2)), pt).scale(c)
    delta21 = delta_el.permute((1, 0))
    fr_inv = TensorElement(2, A.dim, A.field)
    for (q1, q2), c in qR.terms.items():
        inner = A.delta(A.basis_el(q1)).permute((1, 0)).mul(delta21, pt)
        inner = inner.apply_map(0, A.s_inv_cols).apply_map(1, A.s_inv_cols)
        fr_inv = fr_inv + A.delta(A.basis_el(q2)).mul(inner, pt).scale(c)
    if fr.mul(fr_inv, pt) != unit2 or fr_inv.mul(fr, pt) != unit2:
        raise InternalInconsistency("right-dual twist is not invertible as built")
    return f, f_inv, fr, fr_inv


def drinfeld_twist_pair(A):
    """The Drinfeld twist and its inverse (no modulus required)."""
    key = "twist-pair"
    def build():
        qR, pR, qL, pL = qp_elements(A)
        eps_el, delta_el = eps_delta(A, qR, pR, qL, pL)
        return _twists(A, qR, pR, qL, pL, eps_el, delta_el)[:2]
    return A.cache(key, build)


def drinfeld_twists(A):
    d = derived(A)
    return d.f, d.f_inv, d.fr, d.fr_inv


# -- coaction elements ---------------------------------------------------------

def _coaction_elements(A, qR, pR, qL, pL, f, f_inv):
    pt = A.ptable
    ss = lambda t: t.apply_map(0, A.s_cols).apply_map(1, A.s_cols)
    ss_inv = lambda t: t.apply_map(0, A.s_inv_cols).apply_map(1, A.s_inv_cols)
    U = f_inv.mul(ss(qR.permute((1, 0))), pt)
    Ucop = ss_inv(qL.mul(f_inv, pt))
    V = ss_inv(f.permute((1, 0)).mul(pR.permute((1, 0)), pt))
    Vcop = ss(pL).mul(f.permute((1, 0)), pt)
    return U, Ucop, V, Vcop


def hn_elements(A):
    """(U, Ucop, V, Vcop, u, u_cop); the last two need the modulus."""
    d = derived(A)
    return d.U, d.Ucop, d.V, d.Vcop, d.u, d.u_cop


# -- order-5 tensors ---------------------------------------------------------------

def _build_tau(A):
    pt = A.ptable
    T = A.coassociator.apply_coproduct(2, A.cop)     # (A1, A2, A31, A32)
    T = T.tensor(A.coassociator_inv)                 # (+ b1, b2, b3)
    T = T.merge_mul(2, 5, pt)                        # A31*b2 -> slot 2
    #   legs (A1, A2, A31b2, A32, b1, b3)
    T = T.apply_coproduct(2, A.cop)                  # (A1, A2, X1, X2, A32, b1, b3)
    T = T.tensor(A.coassociator_inv)                 # (+ a1, a2, a3)
    T = T.merge_mul(1, 5, pt)                        # A2*b1 -> slot 1
    #   legs (A1, A2b1, X1, X2, A32, b3, a1, a2, a3)
    T = T.merge_mul(6, 2, pt)                        # a1*X1 -> slot 2
    #   legs (A1, A2b1, a1X1, X2, A32, b3, a2, a3)
    T = T.merge_mul(6, 3, pt)                        # a2*X2 -> slot 3
    #   legs (A1, A2b1, a1X1, a2X2, A32, b3, a3)
    T = T.merge_mul(6, 4, pt)                        # a3*A32 -> slot 4
    #   legs (A1, A2b1, a1X1, a2X2, a3A32, b3)
    T = T.merge_mul(4, 5, pt)                        # *b3 -> slot 4
    return T


def _build_sigma(A):
    pt = A.ptable
    T = A.coassociator_inv.apply_coproduct(0, A.cop)
    T = T.apply_coproduct(0, A.cop)
    #   legs (w11, w12, w2, p2, p3) with psi_1 split by (D x id) o D
    T = T.tensor(A.coassociator)                     # (+ B1, B2, B3)
    T = T.tensor(A.coassociator)                     # (+ A1, A2, A3)
    T = T.apply_coproduct(9, A.cop)                  # A2 -> (A2a, A2b)
    #   legs (w11, w12, w2, p2, p3, B1, B2, B3, A1, A2a, A2b, A3)
    T = T.merge_mul(0, 5, pt)                        # w11*B1
    #   legs (w11B1, w12, w2, p2, p3, B2, B3, A1, A2a, A2b, A3)
    T = T.merge_mul(0, 7, pt)                        # *A1 -> sigma1 at 0
    #   legs (s1, w12, w2, p2, p3, B2, B3, A2a, A2b, A3)
    T = T.merge_mul(1, 5, pt)                        # w12*B2
    #   legs (s1, w12B2, w2, p2, p3, B3, A2a, A2b, A3)
    T = T.merge_mul(1, 6, pt)                        # *A2a -> sigma2 at 1
    #   legs (s1, s2, w2, p2, p3, B3, A2b, A3)
    T = T.merge_mul(2, 5, pt)                        # w2*B3
    #   legs (s1, s2, w2B3, p2, p3, A2b, A3)
    T = T.merge_mul(2, 5, pt)                        # *A2b -> sigma3 at 2
    #   legs (s1, s2, s3, p2, p3, A3)
    T = T.merge_mul(3, 5, pt)                        # p2*A3 -> sigma4 at 3
    #   legs (s1, s2, s3, s4, p3)
    return T


def monadic_tensors(A):
    """Contractors evaluating the monadic right-hand sides without dense
    order-5 tensors.  Returns (tau_contractor, sigma_contractor); each
    takes (h, lam) and yields the H-valued right-hand side of the plain
    right (resp. left) equation.  Both are linear in h and in lam."""
    d = derived(A)

    def make(i):
        def run(h, lam):
            rhs = evaluate_rhs(A, d, i, h, lam)
            return rhs
        return run

    return make(2), make(3)


def evaluate_rhs(A, d, i, h, lam):
    """The right-hand side of the type-i monadic equation at (h, lam)."""
    G = d.equation_tensor(i)
    leg = d.lam_leg(i)
    rows = equation_rows(A, G, h.sparse())
    out = [A.field.zero] * A.dim
    for (i1, i2), c in rows.items():
        m, k = (i1, i2) if leg == 0 else (i2, i1)
        out[k] = out[k] + c * lam.values[m]
    return A.el(out)


def equation_rows(A, G, h_sparse):
    """Expand the type-i right-hand side for a single element h.

    Returns a dict (first-leg index, second-leg index) -> Scalar for the
    H (x) H value of the twisted product around Delta(h).
    """
    pt = A.ptable
    dh = {}
    for i, c in h_sparse.items():
        for (y1, y2), cc in A.cop[i]:
            key = (y1, y2)
            v = dh.get(key)
            nv = c * cc if v is None else v + c * cc
            if nv:
                dh[key] = nv
            elif key in dh:
                del dh[key]
    out = {}
    triple = pt.triple
    for (l1, l2, r1, r2), cg in G.terms.items():
        for (y1, y2), cy in dh.items():
            c = cg * cy
            for m, c1 in triple(l1, y1, r1):
                cm = c * c1
                for k, c2 in triple(l2, y2, r2):
                    key = (m, k)
                    v = out.get(key)
                    nv = cm * c2 if v is None else v + cm * c2
                    if nv:
                        out[key] = nv
                    elif key in out:
                        del out[key]
    return out
