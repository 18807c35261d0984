"""Exact spectral decomposition of the invariant open chain H = sum_j r_j.

H preserves the multiset of letters of a word, so it block-diagonalizes over
weight blocks (fixed letter content) before any dense solve; the full n^N
space is only ever assembled by the test oracles.  For n = 2 the weight-k
block is the binomial(N, k)-dimensional space of words with k high letters,
and the sector structure is classified: a sector-k eigenvalue has a highest
weight vector killed by F_1 in block k and carries an E_1-ladder of
N - 2k + 1 states with closed-form F_1 E_1 coefficients
kappa_m = [N-k-m]_q [m-k+1]_q.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial

import numpy as np

from .errors import SizeGuardError, ValidationError, max_dense_dim
from .hecke import apply_generator
from .qalgebra import apply_E, apply_F, q_number
from .states import TensorState, Word

CLUSTER_RTOL = 1e-8
HW_TOL = 1e-8
# eigenvectors of eigenvalues closer than this (relative) are numerically
# entangled; the highest-weight test runs on their joint span instead
HW_WINDOW_RTOL = 1e-5

MAX_WEIGHT_BLOCK_N = 20


@dataclass(frozen=True)
class OpenChain:
    n: int
    N: int
    q: float

    def __post_init__(self):
        if self.n < 1 or self.N < 1:
            raise ValidationError("n and N must be >= 1")
        if self.q <= 0:
            raise ValidationError("q must be positive")


@dataclass
class EigenCluster:
    value: float
    multiplicity: int
    # per contributing weight block: (content, basis words, eigenvector columns)
    blocks: list = field(default_factory=list)
    sector: int | None = None
    hw_residual: float | None = None


@dataclass
class SpectralDecomposition:
    n: int
    N: int
    q: float
    clusters: list

    @property
    def eigenvalues(self) -> list[float]:
        return [c.value for c in self.clusters]

    @property
    def multiplicities(self) -> list[int]:
        return [c.multiplicity for c in self.clusters]

    def total_dimension(self) -> int:
        return sum(self.multiplicities)


def hamiltonian_apply(chain: OpenChain, state: TensorState) -> TensorState:
    """H state = sum over j of r_j state."""
    if state.N != chain.N or state.n != chain.n:
        raise ValidationError("state shape does not match the chain")
    if chain.N == 1:
        return TensorState.zero(state.n, state.N)
    out = TensorState.zero(state.n, state.N)
    for j in range(1, chain.N):
        out = out.add(apply_generator(state, j, chain.q))
    return out


def contents(n: int, N: int) -> list[tuple[int, ...]]:
    """All letter contents (m_1, ..., m_n), m_i >= 0 summing to N."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for m in range(remaining, -1, -1):
            rec(prefix + [m], remaining - m, slots - 1)

    rec([], N, n)
    return out


def weight_basis(n: int, N: int, content: tuple[int, ...]) -> list[Word]:
    """Words with the given letter content, lexicographically sorted."""
    letters = []
    for a, m in enumerate(content, start=1):
        letters.extend([a] * m)

    seen = set()

    def rec(prefix, pool):
        if not pool:
            seen.add(tuple(prefix))
            return
        used = set()
        for i, x in enumerate(pool):
            if x in used:
                continue
            used.add(x)
            rec(prefix + [x], pool[:i] + pool[i + 1:])

    rec([], letters)
    return sorted(seen)


def block_matrix(chain: OpenChain, content: tuple[int, ...], basis=None) -> np.ndarray:
    """Restriction of H to one weight block, as a dense symmetric matrix."""
    basis = weight_basis(chain.n, chain.N, content) if basis is None else basis
    index = {w: i for i, w in enumerate(basis)}
    m = np.zeros((len(basis), len(basis)))
    for col, w in enumerate(basis):
        image = hamiltonian_apply(chain, TensorState.basis(chain.n, w))
        for w2, a in image.amps.items():
            m[index[w2], col] = a
    return m


def _check_guard(chain: OpenChain) -> None:
    if chain.n ** chain.N <= max_dense_dim():
        return
    if chain.n == 2 and chain.N <= MAX_WEIGHT_BLOCK_N:
        return
    raise SizeGuardError(
        f"n^N = {chain.n ** chain.N} exceeds the dense guard and the weight-block "
        f"path covers only n=2, N <= {MAX_WEIGHT_BLOCK_N}")


def _cluster_1d(values: np.ndarray, tol: float) -> list[list[int]]:
    """Group sorted-value indices whose neighbors differ by at most tol."""
    order = np.argsort(values)
    groups = []
    for idx in order:
        if groups and abs(values[idx] - values[groups[-1][-1]]) <= tol:
            groups[-1].append(int(idx))
        else:
            groups.append([int(idx)])
    return groups


def diagonalize(chain: OpenChain, residual_tol: float = 1e-9) -> SpectralDecomposition:
    """Full decomposition via weight blocks, with eigenvalue clustering.

    Eigenvalues are merged within a block and matched across blocks at
    relative gap CLUSTER_RTOL * max |eigenvalue|; exact cross-block
    degeneracies are the tableau multiplicities.  Each eigenvector is checked
    against its eigenvalue within residual_tol.  Eigenvector sign convention:
    first nonzero component positive.
    """
    _check_guard(chain)
    per_block = []
    max_abs = 1.0
    for content in contents(chain.n, chain.N):
        basis = weight_basis(chain.n, chain.N, content)
        m = block_matrix(chain, content, basis)
        vals, vecs = np.linalg.eigh(m)
        for col in range(vecs.shape[1]):
            v = vecs[:, col]
            lead = np.nonzero(np.abs(v) > 1e-12)[0]
            if lead.size and v[lead[0]] < 0:
                vecs[:, col] = -v
            resid = float(np.abs(m @ vecs[:, col] - vals[col] * vecs[:, col]).max())
            if resid > residual_tol * max(1.0, abs(vals[col])):
                raise ValidationError(f"eigenpair residual {resid} exceeds {residual_tol}")
        per_block.append((content, basis, vals, vecs))
        if vals.size:
            max_abs = max(max_abs, float(np.abs(vals).max()))
    tol = CLUSTER_RTOL * max_abs

    flat = []
    for content, basis, vals, vecs in per_block:
        for groups in _cluster_1d(vals, tol):
            value = float(np.mean(vals[groups]))
            flat.append((value, content, basis, vecs[:, groups]))
    values = np.array([f[0] for f in flat])
    clusters = []
    for group in _cluster_1d(values, tol):
        entries = [flat[i] for i in group]
        value = float(np.mean([e[0] for e in entries]))
        mult = sum(e[3].shape[1] for e in entries)
        clusters.append(EigenCluster(value, mult,
                                     [(e[1], e[2], e[3]) for e in entries]))
    clusters.sort(key=lambda c: c.value)
    return SpectralDecomposition(chain.n, chain.N, chain.q, clusters)


def sector_matrix(N: int, q: float, k: int) -> np.ndarray:
    """Weight-k block of the n=2 chain in the basis of high-letter position
    sets i_1 < ... < i_k; for k=1 this is the tridiagonal matrix with
    diagonal (N-1-q^-2, N-2-q^-2, ..., N-2-q^-2, N-2) and off-diagonal q^-1."""
    if not 0 <= k <= N:
        raise ValidationError(f"k must be in [0,{N}]")
    chain = OpenChain(2, N, q)
    return block_matrix(chain, (N - k, k), basis=_weight_words(N, k))


def sector_multiplicity(N: int, k: int) -> int:
    """m_k = N!/(k! (N-k+1)!) (N-2k+1), the number of sector-k eigenvalues."""
    m = Fraction(factorial(N), factorial(k) * factorial(N - k + 1)) * (N - 2 * k + 1)
    assert m.denominator == 1
    return int(m)


def sector_dimension(N: int, k: int) -> int:
    """d_{k,2} = N - 2k + 1, the ladder length of one sector-k eigenvalue."""
    return N - 2 * k + 1


def _weight_words(N: int, k: int) -> list[Word]:
    return [tuple(2 if p in posset else 1 for p in range(N))
            for posset in combinations(range(N), k)]


def _vec_state(v: np.ndarray, words: list[Word]) -> TensorState:
    return TensorState(2, len(words[0]),
                       {w: float(c) for w, c in zip(words, v) if c != 0.0})


@dataclass
class SectorLadder:
    eigenvalue: float
    hw_residual: float
    kappa_residual: float
    termination_residual: float
    eigen_residual: float
    length: int


@dataclass
class SectorReport:
    N: int
    q: float
    sectors: dict                # k -> list[SectorLadder]
    m_observed: dict             # k -> int
    m_predicted: dict            # k -> int
    warnings: list
    ok: bool


def classify_sectors(decomposition: SpectralDecomposition, q: float | None = None) -> SectorReport:
    """Assign n=2 eigenvalues to sectors by the highest-weight test and
    verify each ladder's closed-form coefficients.

    Within each weight block k <= N/2, the sector-k eigenvalues are those
    whose eigenvectors are killed by F_1; degenerate clusters are resolved by
    extracting the F_1 kernel of the eigenspace (the Gram-Schmidt
    re-orthogonalization against lower sectors).  Cross-sector degeneracies
    are warned about and fall back to multiplicity-only matching, never
    silently merged.
    """
    if decomposition.n != 2:
        raise ValidationError("sector classification is defined for the n=2 slice")
    N = decomposition.N
    q = decomposition.q if q is None else q
    chain = OpenChain(2, N, q)
    warnings = []
    sectors: dict[int, list[SectorLadder]] = {}
    seen_values: list[tuple[float, int]] = []
    max_abs = 1.0

    for k in range(N // 2 + 1):
        words = _weight_words(N, k)
        m = sector_matrix(N, q, k)
        vals, vecs = np.linalg.eigh(m)
        if vals.size:
            max_abs = max(max_abs, float(np.abs(vals).max()))
        tol = CLUSTER_RTOL * max_abs
        ladders = []
        # an extraction group spans all eigenvalues whose eigenvectors may be
        # numerically mixed; the F_1 kernel of the joint span separates the
        # highest-weight directions and the Rayleigh quotient recovers each
        # eigenvalue to working precision
        for group in _cluster_1d(vals, HW_WINDOW_RTOL * max_abs):
            sub = vecs[:, group]
            kernel = _highest_weight_subspace(sub, words, k, q)
            if kernel.shape[1] > 1:
                # unmix multiple highest-weight directions by re-diagonalizing
                # the chain inside the kernel
                _, rot = np.linalg.eigh(kernel.T @ (m @ kernel))
                kernel = kernel @ rot
            for col in range(kernel.shape[1]):
                v = kernel[:, col]
                value = float(v @ (m @ v))
                hw = _vec_state(v, words)
                ladders.append(_verify_ladder(chain, hw, value, k))
        for lad in ladders:
            for prev_value, prev_k in seen_values:
                if abs(lad.eigenvalue - prev_value) <= tol and prev_k != k:
                    warnings.append(
                        f"eigenvalue {lad.eigenvalue:.12g} of sector {k} degenerate with "
                        f"sector {prev_k}; falling back to multiplicity-only matching")
            seen_values.append((lad.eigenvalue, k))
        sectors[k] = ladders

    m_observed = {k: len(v) for k, v in sectors.items()}
    m_predicted = {k: sector_multiplicity(N, k) for k in range(N // 2 + 1)}
    ok = m_observed == m_predicted and not warnings
    _annotate(decomposition, sectors)
    return SectorReport(N, q, sectors, m_observed, m_predicted, warnings, ok)


def _highest_weight_subspace(sub: np.ndarray, words: list[Word], k: int,
                             q: float) -> np.ndarray:
    """Orthonormal basis of the F_1 kernel within one eigenspace.

    For a nondegenerate eigenvalue this is the plain highest-weight test; for
    a degenerate cluster the kernel directions are read off the singular
    value decomposition of F_1 restricted to the eigenspace, which is what
    re-orthogonalizing against the lower sectors amounts to.
    """
    if k == 0:
        return sub
    lower_index = {w: i for i, w in enumerate(_weight_words(len(words[0]), k - 1))}
    f_img = np.zeros((len(lower_index), sub.shape[1]))
    for col in range(sub.shape[1]):
        st = apply_F(_vec_state(sub[:, col], words), 1, q)
        for w, a in st.amps.items():
            f_img[lower_index[w], col] = a
    if sub.shape[1] == 1:
        return sub if float(np.linalg.norm(f_img)) < HW_TOL else sub[:, :0]
    _, s, vt = np.linalg.svd(f_img)
    null_mask = np.concatenate([s, np.zeros(sub.shape[1] - s.size)]) < HW_TOL
    return sub @ vt.T[:, null_mask]


def _verify_ladder(chain: OpenChain, hw: TensorState, value: float, k: int) -> SectorLadder:
    """Raise a highest-weight vector through its sector ladder and check the
    kappa coefficients, the termination, and eigenvalue persistence."""
    N, q = chain.N, chain.q
    hw_res = apply_F(hw, 1, q).norm() / hw.norm() if k > 0 else 0.0
    kappa_res = 0.0
    eig_res = 0.0
    b = hw
    length = 1
    for m in range(k, N - k):
        nb = b.norm()
        eig_res = max(eig_res, hamiltonian_apply(chain, b).sub(b.scale(value)).norm() / nb)
        up = apply_E(b, 1, q)
        kappa = q_number(N - k - m, q) * q_number(m - k + 1, q)
        kappa_res = max(kappa_res,
                        apply_F(up, 1, q).sub(b.scale(kappa)).norm() / nb)
        b = up
        length += 1
    nb = b.norm()
    eig_res = max(eig_res, hamiltonian_apply(chain, b).sub(b.scale(value)).norm() / nb)
    term_res = apply_E(b, 1, q).norm() / nb
    return SectorLadder(value, hw_res, kappa_res, term_res, eig_res, length)


def _annotate(decomposition: SpectralDecomposition, sectors: dict) -> None:
    """Attach sector labels and highest-weight residuals to eigen clusters."""
    tol = CLUSTER_RTOL * max(1.0, max((abs(c.value) for c in decomposition.clusters), default=1.0))
    for cluster in decomposition.clusters:
        for k, ladders in sectors.items():
            for lad in ladders:
                if abs(cluster.value - lad.eigenvalue) <= tol:
                    cluster.sector = k
                    cluster.hw_residual = lad.hw_residual
                    break
            if cluster.sector is not None:
                break


@dataclass
class DecompositionReport:
    n: int
    N: int
    q: float
    ok: bool
    total_dimension: int
    expected_total: int
    mismatches: list
    sector_report: SectorReport | None = None


def verify_decomposition(n: int, N: int, q: float) -> DecompositionReport:
    """Cross-check the diagonalized multiplicities against tableau predictions.

    For n=2: each sector k must contribute m_k eigenvalues of multiplicity
    N - 2k + 1, and their total must be 2^N.  For general n only the total
    dimension is matched against the Schur-Weyl sum (the lambda-resolved
    matching is a gl_2 statement).
    """
    from .tableaux import partitions_of, ssyt_dim, syt_dim
    chain = OpenChain(n, N, q)
    deco = diagonalize(chain)
    mismatches = []
    expected_total = sum(syt_dim(lam) * ssyt_dim(lam, n)
                         for lam in partitions_of(N, max_rows=n))
    if expected_total != n ** N:
        mismatches.append({"what": "schur_weyl_total", "expected": n ** N,
                           "got": expected_total})
    total = deco.total_dimension()
    if total != n ** N:
        mismatches.append({"what": "spectral_total", "expected": n ** N, "got": total})
    sector_report = None
    if n == 2:
        sector_report = classify_sectors(deco, q)
        for k in range(N // 2 + 1):
            expected_m = sector_multiplicity(N, k)
            got_m = sector_report.m_observed.get(k, 0)
            if got_m != expected_m:
                mismatches.append({"what": f"sector_{k}_count",
                                   "expected": expected_m, "got": got_m})
        for cluster in deco.clusters:
            if cluster.sector is None:
                mismatches.append({"what": "unclassified_eigenvalue",
                                   "value": cluster.value})
            elif cluster.multiplicity != sector_dimension(N, cluster.sector):
                mismatches.append({"what": "cluster_multiplicity",
                                   "value": cluster.value,
                                   "expected": sector_dimension(N, cluster.sector),
                                   "got": cluster.multiplicity})
        bookkeeping = sum(sector_multiplicity(N, k) * sector_dimension(N, k)
                          for k in range(N // 2 + 1))
        if bookkeeping != 2 ** N:
            mismatches.append({"what": "sector_bookkeeping", "expected": 2 ** N,
                               "got": bookkeeping})
    ok = not mismatches and (sector_report.ok if sector_report else True)
    return DecompositionReport(n, N, q, ok, total, n ** N, mismatches, sector_report)


def symmetry_residual(n: int, N: int, q: float) -> float:
    """Max norm of [H, y] v over coproduct operators y and basis words v;
    zero in exact arithmetic by the invariance of the chain."""
    from .qalgebra import apply_qEps, apply_qH
    from .states import all_words
    if n ** N > 10 ** 5:
        raise SizeGuardError(f"n^N = {n**N} too large for the symmetry sweep")
    chain = OpenChain(n, N, q)
    ops = []
    for j in range(1, n):
        ops.append(lambda s, j=j: apply_E(s, j, q))
        ops.append(lambda s, j=j: apply_F(s, j, q))
        ops.append(lambda s, j=j: apply_qH(s, j, q))
    for j in range(1, n + 1):
        ops.append(lambda s, j=j: apply_qEps(s, j, q))
    worst = 0.0
    for word in all_words(n, N):
        v = TensorState.basis(n, word)
        hv = hamiltonian_apply(chain, v)
        for op in ops:
            worst = max(worst, hamiltonian_apply(chain, op(v)).sub(op(hv)).norm())
    return worst
