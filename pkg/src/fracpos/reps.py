"""Finite truncations of the distinguished Hilbert-space representations.

The ladder truncation realizes the canonical pair on the lowest N oscillator
states; the grid family realizes i*d/dx and multiplication by +-exp(x) with
fourth-order central differences; scalar and diagonal families cover the
one-dimensional representations and the commutative model. Everything here
is evidence, not proof: eigenvalues of truncations only approximate the
operators they shadow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q

import numpy as np

from .algebra import Element, Presentation
from .errors import BadSize, FracposError, NotCommPreset, PresetMismatch, SingularResolvent

_CIRCLE_TOL = 1e-12


@dataclass
class TruncatedRep:
    pres: Presentation
    kind: str  # "schroedinger" | "axb-grid" | "axb-scalar" | "comm-atoms"
    size: int
    matrices: dict
    params: dict = field(default_factory=dict)


def _ladder(n: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, n)), k=1).astype(complex)


def _diff4(x: np.ndarray) -> np.ndarray:
    """Fourth-order central difference with zero padding outside the grid."""
    n = len(x)
    h = x[1] - x[0]
    D = np.zeros((n, n))
    for j in range(n):
        for offset, weight in ((-2, 1.0), (-1, -8.0), (1, 8.0), (2, -1.0)):
            k = j + offset
            if 0 <= k < n:
                D[j, k] = weight / (12.0 * h)
    return D


def build_representation(
    kind: str,
    pres: Presentation,
    N: int = 64,
    L: float = 8.0,
    sign: int = 1,
    gamma: float = 2.0,
    atoms=None,
) -> TruncatedRep:
    """Construct generator matrices for one of the supported families."""
    if kind == "schroedinger":
        if pres.kind != "weyl":
            raise PresetMismatch("the ladder truncation represents the weyl preset")
        if N < 2:
            raise BadSize("need at least a 2x2 truncation")
        a = _ladder(N)
        q_mat = (a + a.conj().T) / np.sqrt(2.0)
        p_mat = 1j * (a.conj().T - a) / np.sqrt(2.0)
        comm = p_mat @ q_mat - q_mat @ p_mat + 1j * np.eye(N)
        assert np.abs(comm[: N - 1, : N - 1]).max() < 1e-13
        return TruncatedRep(pres, kind, N, {"p": p_mat, "q": q_mat}, {"N": N})
    if kind == "axb-grid":
        if pres.kind != "axb":
            raise PresetMismatch("the grid family represents the axb preset")
        if N < 8:
            raise BadSize("grid truncations need at least 8 points")
        if L <= 0:
            raise BadSize("grid half-width must be positive")
        x = np.linspace(-L, L, N)
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        A = 1j * _diff4(x)
        B = np.diag(sign * np.exp(x)).astype(complex)
        return TruncatedRep(pres, kind, N, {"a": A, "b": B}, {"N": N, "L": L, "sign": sign, "x": x})
    if kind == "axb-scalar":
        if pres.kind != "axb":
            raise PresetMismatch("the scalar family represents the axb preset")
        A = np.array([[complex(gamma)]])
        B = np.zeros((1, 1), dtype=complex)
        return TruncatedRep(pres, kind, 1, {"a": A, "b": B}, {"gamma": float(gamma)})
    if kind == "comm-atoms":
        if pres.kind != "comm":
            raise NotCommPreset("atom lists represent the comm preset")
        if not atoms:
            raise BadSize("need at least one atom")
        lam = np.array([float(a) for a, _ in atoms])
        mu = np.array([float(b) for _, b in atoms])
        defect = np.abs(lam ** 2 + mu ** 2 - lam)
        if defect.max() > _CIRCLE_TOL:
            raise ValueError(f"atom off the spectral circle by {defect.max():.3g}")
        mats = {"s_inv": np.diag(lam).astype(complex), "x_s_inv": np.diag(mu).astype(complex)}
        return TruncatedRep(pres, kind, len(atoms), mats, {"atoms": [tuple(map(float, a)) for a in atoms]})
    raise ValueError(f"unknown representation kind {kind!r}")


def _generator_matrices(rep: TruncatedRep):
    if rep.kind == "comm-atoms":
        lam = np.real(np.diag(rep.matrices["s_inv"]))
        mu = np.real(np.diag(rep.matrices["x_s_inv"]))
        if np.abs(lam).min() <= _CIRCLE_TOL:
            raise FracposError(
                "torsion atoms present; split the representation before evaluating"
            )
        return (np.diag(mu / lam).astype(complex),)
    names = rep.pres.gen_names
    return tuple(rep.matrices[name] for name in names)


def rep_evaluate(rep: TruncatedRep, c: Element, oversample: int = 1) -> np.ndarray:
    """Matrix of c under the representation.

    For the ladder truncation with oversample > 1 the generator matrices are
    rebuilt at oversample*N, monomials are multiplied there, and the result
    is cropped back, which clears the edge-row corruption of naive truncated
    products. Other families evaluate at their native size.
    """
    if c.pres != rep.pres:
        raise PresetMismatch("element and representation use different presets")
    work = rep
    if oversample > 1 and rep.kind == "schroedinger":
        work = build_representation("schroedinger", rep.pres, N=oversample * rep.size)
    if rep.kind == "comm-atoms" and all(m == (0, 0) for m in c.terms):
        gens = (np.zeros((rep.size, rep.size), dtype=complex),)
    else:
        gens = _generator_matrices(work)
    n = gens[0].shape[0] if gens else work.size
    out = np.zeros((n, n), dtype=complex)
    eye = np.eye(n, dtype=complex)
    for (j, l), coeff in c.terms.items():
        term = eye
        if j:
            term = term @ np.linalg.matrix_power(gens[0], j)
        if l:
            term = term @ np.linalg.matrix_power(gens[1], l)
        out = out + coeff.to_complex() * term
    out = out[: rep.size, : rep.size]
    if c.is_hermitian():
        # Ladder products are exact on the kept block once the oversampled
        # margin exceeds the total degree; grids keep discretization error.
        exact = rep.kind in ("axb-scalar", "comm-atoms")
        if rep.kind == "schroedinger" and not c.is_zero():
            d1, d2 = c.degree()
            exact = (oversample - 1) * rep.size >= d1 + d2
        if exact:
            defect = np.abs(out - out.conj().T).max()
            scale = max(1.0, float(np.abs(out).max()))
            assert defect <= 1e-10 * scale, f"hermitian defect {defect:.3g}"
        out = (out + out.conj().T) / 2.0
    return out


@dataclass
class MinEigReport:
    value: float
    n_sequence: list  # [(N, lambda_min)]
    margin: float
    margin_positive: bool
    stabilized: bool

    def to_dict(self):
        return {
            "value": self.value,
            "N_sequence": [[n, v] for n, v in self.n_sequence],
            "margin": self.margin,
            "margin_positive": self.margin_positive,
            "stabilized": self.stabilized,
        }


def min_eig_check(
    pres: Presentation,
    c: Element,
    margin: float,
    N_list,
    kind: str = "schroedinger",
    oversample: int = 2,
    **build_kwargs,
) -> MinEigReport:
    """Smallest eigenvalue of the represented element across truncation sizes.

    margin_positive needs the two largest sizes to agree within 5% relative
    change and both to clear the margin. Numerical evidence only.
    """
    if not c.is_hermitian():
        raise FracposError("eigenvalue checks need a hermitian element")
    seq = []
    for N in sorted(N_list):
        rep = build_representation(kind, pres, N=N, **build_kwargs)
        mat = rep_evaluate(rep, c, oversample=oversample)
        seq.append((N, float(np.linalg.eigvalsh(mat).min())))
    last = seq[-1][1]
    stabilized = True
    if len(seq) >= 2:
        prev = seq[-2][1]
        stabilized = abs(last - prev) <= 0.05 * max(abs(last), abs(prev), 1e-12)
        margin_positive = stabilized and last > margin and prev > margin
    else:
        margin_positive = last > margin
    return MinEigReport(last, seq, margin, margin_positive, stabilized)


# -- resolvent identities --------------------------------------------------------


@dataclass
class ResolventReport:
    kind: str
    identity_residuals: dict
    vector_residuals: list
    tolerance: float
    passed: bool
    note: str

    def to_dict(self):
        return {
            "kind": self.kind,
            "identity_residuals": self.identity_residuals,
            "vector_residuals": self.vector_residuals,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "note": self.note,
        }


def _rel(lhs: np.ndarray, rhs: np.ndarray) -> float:
    return float(np.linalg.norm(lhs - rhs) / (1.0 + np.linalg.norm(lhs) + np.linalg.norm(rhs)))


def resolvent_integrability_check(
    rep: TruncatedRep,
    tol_scalar: float = 1e-12,
    tol_grid: float = 1e-2,
) -> ResolventReport:
    """Residuals of the shifted-inverse identities for the axb families.

    Scalar representations must satisfy every identity to near machine
    precision. Grid representations satisfy the pure resolvent identities
    tightly and the commutator-driven ones only up to discretization error,
    so those are evaluated on smooth, rapidly decaying test vectors. The
    range-density requirement behind integrability is recorded as not
    checkable at finite size.
    """
    if rep.kind not in ("axb-grid", "axb-scalar"):
        raise PresetMismatch("resolvent checks apply to the axb families")
    alpha = float(rep.pres.alpha)
    beta = float(rep.pres.beta)
    A = rep.matrices["a"]
    B = rep.matrices["b"]
    n = A.shape[0]
    eye = np.eye(n, dtype=complex)

    def inv(mat, label):
        try:
            return np.linalg.inv(mat)
        except np.linalg.LinAlgError as exc:
            raise SingularResolvent(f"{label} is numerically singular") from exc

    x0 = inv(A - 1j * alpha * eye, "A - alpha*i")
    x1 = inv(A - 1j * (alpha + 1) * eye, "A - (alpha+1)*i")
    y = inv(B - 1j * beta * eye, "B - beta*i")

    residuals = {
        "first_resolvent_normal": _rel(x0 - x0.conj().T, 2j * alpha * (x0.conj().T @ x0)),
        "first_resolvent_normal_swapped": _rel(x0 - x0.conj().T, 2j * alpha * (x0 @ x0.conj().T)),
        "second_resolvent_normal": _rel(y - y.conj().T, 2j * beta * (y.conj().T @ y)),
        "second_resolvent_normal_swapped": _rel(y - y.conj().T, 2j * beta * (y @ y.conj().T)),
        "shift_difference": _rel(x0 - x1, -1j * (x1 @ x0)),
        "shift_difference_swapped": _rel(x0 - x1, -1j * (x0 @ x1)),
    }

    if rep.kind == "axb-scalar":
        residuals["mixed_commutation"] = _rel(x0 @ y - y @ x1, -beta * (y @ x1 @ x0 @ y))
        vectors = [np.ones((1,), dtype=complex)]
    else:
        L = rep.params["L"]
        x = rep.params["x"]
        sigma = L / 6.0
        vectors = []
        for k in range(5):
            v = (x ** k) * np.exp(-(x ** 2) / (2.0 * sigma ** 2))
            vectors.append((v / np.linalg.norm(v)).astype(complex))
        mixed = []
        for v in vectors:
            lhs = x0 @ (y @ v) - y @ (x1 @ v)
            rhs = -beta * (y @ (x1 @ (x0 @ (y @ v))))
            mixed.append(float(np.linalg.norm(lhs - rhs) / max(np.linalg.norm(lhs) + np.linalg.norm(rhs), 1e-30)))
        residuals["mixed_commutation_on_vectors"] = max(mixed)

    vector_residuals = []
    for v in vectors:
        bv = B @ v
        r = A @ bv - B @ (A @ v) - 1j * bv
        vector_residuals.append(float(np.linalg.norm(r) / max(np.linalg.norm(bv), 1e-30)))

    if rep.kind == "axb-scalar":
        tol = tol_scalar
        passed = max(residuals.values()) <= tol and max(vector_residuals) <= tol
    else:
        tol = tol_grid
        tight = [v for k, v in residuals.items() if "mixed" not in k]
        loose = [v for k, v in residuals.items() if "mixed" in k]
        # The mixed identity inherits the discretized commutator error twice,
        # so it gets a wider band than the commutator residual itself.
        passed = max(tight) <= 1e-10 and max(loose) <= 5 * tol and max(vector_residuals) <= tol
    return ResolventReport(
        rep.kind,
        residuals,
        vector_residuals,
        tol,
        passed,
        "range density of the composed shifts is not checkable at finite size",
    )


# -- commutative torsion split ---------------------------------------------------


@dataclass
class SplitResult:
    torsion_atoms: list
    torsionfree_atoms: list
    pi_matrix: np.ndarray  # diagonal action on the torsionfree block, or None
    direct_matrix: np.ndarray
    agreement: float
    note: str = ""

    def to_dict(self):
        return {
            "torsion_atoms": self.torsion_atoms,
            "torsionfree_atoms": self.torsionfree_atoms,
            "pi_diagonal": None if self.pi_matrix is None else np.diag(self.pi_matrix).real.tolist(),
            "agreement": self.agreement,
            "note": self.note,
        }


def finite_rep_split_and_pi_rho(rep: TruncatedRep, element: Element) -> SplitResult:
    """Split a diagonal commutative representation and induce the polynomial action.

    Atoms with vanishing first coordinate form the torsion block, where both
    fraction generators act by zero. On the complement the element acts
    through quotients of the generator matrices; the same action computed
    directly from the circle coordinates is used as a cross-check.
    """
    if rep.kind != "comm-atoms":
        raise NotCommPreset("splitting is defined for diagonal commutative atoms")
    if element.pres != rep.pres:
        raise PresetMismatch("element preset does not match the representation")
    atoms = rep.params["atoms"]
    torsion = [pair for pair in atoms if abs(pair[0]) <= _CIRCLE_TOL]
    free = [pair for pair in atoms if abs(pair[0]) > _CIRCLE_TOL]
    if not free:
        return SplitResult(
            torsion, free, None,
            np.zeros((0, 0)), 0.0,
            "torsionfree block is empty; the induced action is undefined and "
            "the torsion block sends both fraction generators to zero",
        )
    lam = np.array([a for a, _ in free])
    mu = np.array([b for _, b in free])
    coeffs = {j: coeff for (j, _), coeff in element.terms.items()}
    deg = max(coeffs, default=0)
    n_pow = (deg + 1) // 2
    # element * s^-n expanded in the two fraction generators, evaluated atomwise
    values = np.zeros(len(free), dtype=complex)
    for j, coeff in coeffs.items():
        half = j // 2
        odd = j % 2
        term = (mu ** odd) * ((1.0 - lam) ** half) * lam ** (n_pow - half - odd)
        values = values + coeff.to_complex() * term
    pi_diag = values * lam ** (-float(n_pow))
    direct = np.zeros(len(free), dtype=complex)
    for j, coeff in coeffs.items():
        direct = direct + coeff.to_complex() * (mu / lam) ** j
    agreement = float(np.abs(pi_diag - direct).max())
    assert agreement <= 1e-10 * (1.0 + float(np.abs(direct).max())), agreement
    return SplitResult(torsion, free, np.diag(pi_diag), np.diag(direct), agreement)
