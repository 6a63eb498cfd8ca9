"""The trigonometric Casimir connection and its relation suites.

The gl_n connection lives on the diagonal torus with coordinates
z_1..z_n; its coefficient contracted against a direction v (given in
theta-coordinates) is

    A(z)(v) = sum_{i<j} (v_i - v_j)/(z_i/z_j - 1) kappa_{ij}
              + sum_i v_i D_i                       (tau form)

with the half-sum variant and the rational-coordinates variant as
alternative presentations.  Points, directions and evaluation parameters
are exact rationals, so flatness and equivariance are checked as exact
commutator identities, never numerically.

The generic relation suite checks the flatness/equivariance relations of
a trigonometric connection over any root system, for an arbitrary
assignment of matrices t_alpha and tau(coweight).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .glrep import TensorModule
from .matrices import ExactMatrix, commutator, rational_nullspace
from .rootsys import RootSystem, WeylGroup
from .yangian import (
    EvalParams,
    realize_D,
    realize_D_mutated,
    realize_Delta,
    realize_Dtilde,
    realize_T1,
    realize_t,
)


class SingularTorusPoint(ValueError):
    pass


@dataclass(frozen=True)
class TorusPoint:
    """Point of the diagonal torus of gl_n: nonzero coordinates z_i."""

    z: tuple

    def __post_init__(self):
        if any(not x for x in self.z):
            raise ValueError("torus coordinates must be nonzero")

    @property
    def n(self):
        return len(self.z)

    def is_regular(self) -> bool:
        n = len(self.z)
        return all(
            self.z[i] != self.z[j] for i in range(n) for j in range(i + 1, n)
        )

    def require_regular(self):
        if not self.is_regular():
            raise SingularTorusPoint(f"point {self.z} lies on a root hypertorus")

    def permuted(self, perm) -> "TorusPoint":
        """Coordinates transported by a permutation: (w z)_{w(i)} = z_i."""
        out = [None] * len(self.z)
        for i, zi in enumerate(self.z):
            out[perm[i] - 1] = zi
        return TorusPoint(tuple(out))


def theta_coweight(n: int, i: int):
    """i-th fundamental coweight of sl_n in theta-coordinates."""
    return tuple(
        Fraction(1) - Fraction(i, n) if k < i else -Fraction(i, n)
        for k in range(n)
    )


def fundamental_weight_value(v, i: int) -> Fraction:
    """lambda_i(v) = sum_{k<=i} v_k for traceless v."""
    return sum((Fraction(x) for x in v[:i]), Fraction(0))


@dataclass
class ConnectionForm:
    """The gl_n trigonometric Casimir connection on a tensor product of
    evaluation modules, in one of its three presentations."""

    module: TensorModule
    params: EvalParams
    style: str = "tau"  # 'tau' | 'delta' | 'rational'
    lam: Fraction = Fraction(1)  # overall scale: coefficient / lam
    mutated: bool = False  # negative control: breaks the D_1 tail

    def __post_init__(self):
        if self.style not in ("tau", "delta", "rational"):
            raise ValueError(f"unknown style {self.style!r}")
        if len(self.params) != self.module.m:
            raise ValueError("parameter count must match factor count")
        self.lam = Fraction(self.lam)

    def _tail(self, i: int) -> ExactMatrix:
        if self.mutated and i == 1:
            return realize_D_mutated(self.module, self.params, 1)
        if self.style == "tau":
            return realize_D(self.module, self.params, i)
        if self.style == "delta":
            return realize_Delta(self.module, self.params, i)
        return realize_Dtilde(self.module, self.params, i)

    def coefficient(self, p: TorusPoint, v) -> ExactMatrix:
        """A(p) contracted with the direction v (theta-coordinates)."""
        p.require_regular()
        n = self.module.n
        if len(p.z) != n or len(v) != n:
            raise ValueError("point/direction dimension mismatch")
        z = [Fraction(x) for x in p.z]
        v = [Fraction(x) for x in v]
        out = ExactMatrix.zeros(self.module.dim)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                q = z[i - 1] / z[j - 1]
                if self.style == "tau":
                    c = (v[i - 1] - v[j - 1]) / (q - 1)
                elif self.style == "delta":
                    c = (q + 1) / (q - 1) * (v[i - 1] - v[j - 1]) / 2
                else:
                    c = (z[i - 1] * v[i - 1] - z[j - 1] * v[j - 1]) / (
                        z[i - 1] - z[j - 1]
                    )
                if c:
                    out = out + self.module.casimir(i, j).scale(c)
        for i in range(1, n + 1):
            if v[i - 1]:
                out = out + self._tail(i).scale(v[i - 1])
        if self.lam != 1:
            out = out.scale(1 / self.lam)
        return out


def flatness_residual(form: ConnectionForm, p: TorusPoint) -> Fraction:
    """Largest commutator norm over pairs of coordinate directions;
    exactly zero iff the connection is flat at p."""
    n = form.module.n
    dirs = [tuple(Fraction(k == i) for k in range(n)) for i in range(n)]
    coeffs = [form.coefficient(p, d) for d in dirs]
    worst = Fraction(0)
    for i in range(n):
        for j in range(i + 1, n):
            worst = max(worst, commutator(coeffs[i], coeffs[j]).max_abs())
    return worst


def forms_agree_residual(module, params, p: TorusPoint, v) -> Fraction:
    """tau, delta and rational presentations give the same coefficient."""
    a = ConnectionForm(module, params, "tau").coefficient(p, v)
    b = ConnectionForm(module, params, "delta").coefficient(p, v)
    c = ConnectionForm(module, params, "rational").coefficient(p, v)
    return max((a - b).max_abs(), (a - c).max_abs())


def equivariance_residual(form: ConnectionForm, i: int, p: TorusPoint) -> Fraction:
    """Exact residual of the transposition equivariance at (i, i+1):
    Ad(r) kappa = kappa-swapped, Ad(r) D_k - D_{sk} = (alpha_i, E_kk) kappa_i,
    and the pointwise statement Ad(r) A(p)(v) = A(sp)(sv)."""
    mod, params = form.module, form.params
    n = mod.n
    r = mod.tits_simple(i)
    rinv = r**3
    sigma = list(range(1, n + 1))
    sigma[i - 1], sigma[i] = sigma[i], sigma[i - 1]
    worst = Fraction(0)
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            sa, sb = sigma[a - 1], sigma[b - 1]
            target = mod.casimir(min(sa, sb), max(sa, sb))
            worst = max(worst, (r * mod.casimir(a, b) * rinv - target).max_abs())
    kappa_i = mod.casimir(i, i + 1)
    for k in range(1, n + 1):
        dk = realize_D(mod, params, k)
        dsk = realize_D(mod, params, sigma[k - 1])
        pair = Fraction((k == i) - (k == i + 1))
        res = r * dk * rinv - dsk - kappa_i.scale(pair)
        worst = max(worst, res.max_abs())
    # pointwise coefficient equivariance at p, direction theta_i
    v = tuple(Fraction(k == i - 1) for k in range(n))
    sv = tuple(v[sigma.index(k + 1)] for k in range(n))
    lhs = r * form.coefficient(p, v) * rinv
    rhs = form.coefficient(p.permuted(sigma), sv)
    worst = max(worst, (lhs - rhs).max_abs())
    return worst


# -- generic relation suite over an arbitrary root system -----------------


def root_kernel_basis(rs: RootSystem, alpha):
    """Rational basis of {v in coweight coordinates : alpha(v) = 0}."""
    return rational_nullspace([[Fraction(c) for c in alpha]])


@dataclass
class CheckRecord:
    name: str
    relation: str
    residual: Fraction
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.residual == 0


def generic_relation_suite(
    rs: RootSystem,
    t_map,
    tau_list=None,
    w_action=None,
    subsystems=None,
    weyl: WeylGroup | None = None,
    tw_limit: int = 400,
):
    """Check the flatness/equivariance relations for matrices t_alpha
    (map: positive root -> ExactMatrix, extended evenly to negatives) and
    tau on the fundamental-coweight basis (list of matrices).

    Returns a list of CheckRecord with exact residuals.
    """
    from .rootsys import enumerate_rank2_subsystems

    records = []
    if subsystems is None:
        subsystems = enumerate_rank2_subsystems(rs)
    dim = next(iter(t_map.values())).n

    def tsum(psi):
        out = ExactMatrix.zeros(dim)
        for b in psi.positive:
            out = out + t_map[b]
        return out

    worst = Fraction(0)
    for psi in subsystems:
        s = tsum(psi)
        for b in psi.positive:
            worst = max(worst, commutator(t_map[b], s).max_abs())
    records.append(
        CheckRecord("rank-2 sums", "[t_a, sum_{b in Psi+} t_b] = 0", worst,
                    f"{len(subsystems)} subsystems")
    )

    if tau_list is not None:
        worst = Fraction(0)
        for i in range(rs.rank):
            for j in range(i + 1, rs.rank):
                worst = max(worst, commutator(tau_list[i], tau_list[j]).max_abs())
        records.append(CheckRecord("tail commutativity", "[tau(u), tau(v)] = 0", worst))

        def tau_of(v):
            out = ExactMatrix.zeros(dim)
            for c, m in zip(v, tau_list):
                if c:
                    out = out + m.scale(Fraction(c))
            return out

        worst = Fraction(0)
        for i, alpha in enumerate(rs.simple_roots):
            for j in range(rs.rank):
                if j != i:
                    worst = max(
                        worst, commutator(t_map[alpha], tau_list[j]).max_abs()
                    )
        records.append(
            CheckRecord("simple-root cross relation", "[t_{a_i}, tau(u)] = 0 on ker a_i", worst)
        )

        def delta_of(v):
            out = tau_of(v)
            for b in rs.positive_roots:
                c = rs.pairing(b, v)
                if c:
                    out = out - t_map[b].scale(c / 2)
            return out

        worst = Fraction(0)
        for alpha in rs.positive_roots:
            for v in root_kernel_basis(rs, alpha):
                worst = max(worst, commutator(t_map[alpha], delta_of(v)).max_abs())
        records.append(
            CheckRecord("delta cross relation", "[t_a, delta(v)] = 0 on ker a", worst)
        )

        # alternating form of the cross relation, all w with w^-1 a simple
        if weyl is None:
            weyl = WeylGroup(rs)
        worst = Fraction(0)
        tested = 0
        for w in weyl.elements:
            winv = weyl.inverse(w)
            for alpha in rs.positive_roots:
                if winv.apply_root(alpha) not in rs.simple_roots:
                    continue
                if tested >= tw_limit:
                    break
                tested += 1
                for v in root_kernel_basis(rs, alpha):
                    acc = ExactMatrix.zeros(dim)
                    for b in rs.positive_roots:
                        c = rs.pairing(b, v) * weyl.sign_of_root(winv, b)
                        if c:
                            acc = acc + t_map[b].scale(c)
                    worst = max(worst, commutator(t_map[alpha], acc).max_abs())
        records.append(
            CheckRecord(
                "alternating cross relation",
                "[t_a, sum sign(w^-1 b) b(v) t_b] = 0", worst, f"{tested} pairs"
            )
        )

    if w_action is not None:
        worst = Fraction(0)
        inv = [r**3 for r in w_action]
        for i in range(rs.rank):
            for alpha in rs.positive_roots:
                img = rs.reflect_root(i, alpha)
                timg = t_map[img] if rs.is_positive(img) else t_map[
                    tuple(-x for x in img)
                ]
                worst = max(
                    worst,
                    (w_action[i] * t_map[alpha] * inv[i] - timg).max_abs(),
                )
        records.append(
            CheckRecord("reflection on poles", "s_i(t_a) = t_{s_i a}", worst)
        )
        if tau_list is not None:
            worst = Fraction(0)
            for i in range(rs.rank):
                for j in range(rs.rank):
                    u = rs.fundamental_coweight(j)
                    su = rs.reflect_coweight(i, u)
                    lhs = w_action[i] * tau_list[j] * inv[i]
                    rhs = tau_of(su) + t_map[rs.simple_roots[i]].scale(
                        rs.pairing(rs.simple_roots[i], u)
                    )
                    worst = max(worst, (lhs - rhs).max_abs())
            records.append(
                CheckRecord(
                    "reflection on tail",
                    "s_i(tau(u)) - tau(s_i u) = (a_i, u) t_{a_i}", worst
                )
            )
    return records


# -- the sl_n instantiation ------------------------------------------------


def sl_tau(module: TensorModule, params: EvalParams, u) -> ExactMatrix:
    """tau(u) = -2 T(u)_1 + sum_j lambda_j(u) t_j^2 for traceless u."""
    if sum(Fraction(x) for x in u) != 0:
        raise ValueError("direction must be traceless")
    out = ExactMatrix.zeros(module.dim)
    acc = Fraction(0)
    for j in range(1, module.n):
        acc += Fraction(u[j - 1])
        if acc:
            tj = module.act(j, j) - module.act(j + 1, j + 1)
            out = out + realize_T1(module, params, j).scale(Fraction(-2) * acc)
            out = out + (tj * tj).scale(acc)
    return out


def sl_coefficient(module, params, p: TorusPoint, v) -> ExactMatrix:
    """Coefficient of the sl_n connection at p contracted with traceless v."""
    p.require_regular()
    n = module.n
    if sum(Fraction(x) for x in v) != 0:
        raise ValueError("direction must be traceless")
    z = [Fraction(x) for x in p.z]
    out = sl_tau(module, params, v)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            c = (Fraction(v[i - 1]) - Fraction(v[j - 1])) / (z[i - 1] / z[j - 1] - 1)
            if c:
                out = out + module.casimir(i, j).scale(c)
    return out


def sln_restriction_residual(module, params, p: TorusPoint, v) -> ExactMatrix:
    """gl_n coefficient minus sl_n coefficient minus the diagonal
    closed-form tail sum_i lambda_i(v) (E_ii - E_{i+1,i+1}); exactly zero."""
    if sum(Fraction(x) for x in v) != 0:
        raise ValueError("direction must be traceless")
    gl = ConnectionForm(module, params, "tau").coefficient(p, v)
    sl = sl_coefficient(module, params, p, v)
    resid = gl - sl
    for i in range(1, module.n):
        c = fundamental_weight_value(v, i)
        if c:
            ti = module.act(i, i) - module.act(i + 1, i + 1)
            resid = resid - ti.scale(c)
    return resid


# -- dynamical differential operators --------------------------------------


def casimir_identity_residual(n: int, i: int, j: int) -> Fraction:
    """E_ij E_ji - E_ii = (kappa_{ij} - (E_ii + E_jj)) / 2 on one factor."""
    mod = TensorModule(n, 1)
    lhs = mod.act(i, j) * mod.act(j, i) - mod.act(i, i)
    rhs = (
        mod.casimir(min(i, j), max(i, j)) - mod.act(i, i) - mod.act(j, j)
    ).scale(Fraction(1, 2))
    return (lhs - rhs).max_abs()


def dynamical_operator(module, params, p: TorusPoint, i: int) -> ExactMatrix:
    """The z_i d/dz_i coefficient of the dynamical system:
    L_i = (1/2) E_ii^2 - sum_p a_p (E_ii)_p - sum_{j, p<q} (E_ij)_p (E_ji)_q
          - sum_{j != i} z_j/(z_i - z_j) (E_ij E_ji - E_ii)."""
    from .matrices import embed_factor

    p.require_regular()
    n, m = module.n, module.m
    z = [Fraction(x) for x in p.z]
    eii = module.act(i, i)
    out = (eii * eii).scale(Fraction(1, 2))
    single = TensorModule(n, 1)
    for q_, ap in enumerate(params.points, start=1):
        if ap:
            out = out - embed_factor(single.act(i, i), q_, m).scale(ap)
    for j in range(1, n + 1):
        for pfac in range(1, m + 1):
            for qfac in range(pfac + 1, m + 1):
                out = out - embed_factor(single.act(i, j), pfac, m) * embed_factor(
                    single.act(j, i), qfac, m
                )
    for j in range(1, n + 1):
        if j == i:
            continue
        c = z[j - 1] / (z[i - 1] - z[j - 1])
        term = module.act(i, j) * module.act(j, i) - module.act(i, i)
        out = out - term.scale(c)
    return out


def tv_match_residual(module, params, p: TorusPoint, lam) -> Fraction:
    """The dynamical covariant-derivative coefficients agree with the
    lam/2-scaled connection coefficient corrected by the diagonal closed
    one-form; exact residual over all coordinate directions."""
    lam = Fraction(lam)
    n = module.n
    z = [Fraction(x) for x in p.z]
    form = ConnectionForm(module, params, "tau")
    worst = Fraction(0)
    for i in range(1, n + 1):
        v = tuple(Fraction(k == i - 1) for k in range(n))
        lhs = dynamical_operator(module, params, p, i).scale(-lam)
        mid = form.coefficient(p, v).scale(lam / 2)
        x = ExactMatrix.zeros(module.dim)
        for k in range(1, n + 1):
            for l in range(k + 1, n + 1):
                c = Fraction((k == i) - (l == i)) / (z[k - 1] / z[l - 1] - 1)
                if c:
                    x = x + (module.act(k, k) + module.act(l, l)).scale(c)
        for j in range(1, i):
            x = x - (module.act(i, i) + module.act(j, j))
        x = x.scale(lam / 2)
        worst = max(worst, (lhs - mid + x).max_abs())
    return worst


# -- chamber changes ---------------------------------------------------------


def chamber_change_residual(module, params, p: TorusPoint, perm, v) -> Fraction:
    """Rewriting the connection over the permuted positive system w(Phi_+)
    with the shifted tail tau_w leaves the coefficient unchanged."""
    p.require_regular()
    n = module.n
    z = [Fraction(x) for x in p.z]
    v = [Fraction(x) for x in v]
    inv = [0] * n
    for idx, val in enumerate(perm):
        inv[val - 1] = idx + 1
    base = ConnectionForm(module, params, "tau").coefficient(p, tuple(v))
    out = ExactMatrix.zeros(module.dim)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j or not inv[i - 1] < inv[j - 1]:
                continue
            q = z[i - 1] / z[j - 1]
            c = (v[i - 1] - v[j - 1]) / (q - 1)
            if c:
                out = out + module.casimir(min(i, j), max(i, j)).scale(c)
    inversions = [
        (i, j)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if inv[i - 1] > inv[j - 1]
    ]
    for k in range(1, n + 1):
        if not v[k - 1]:
            continue
        tail = realize_D(module, params, k)
        for (i, j) in inversions:
            pair = Fraction((k == i) - (k == j))
            if pair:
                tail = tail - module.casimir(i, j).scale(pair)
        out = out + tail.scale(v[k - 1])
    return (out - base).max_abs()
