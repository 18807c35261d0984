"""Coproduct action operators, q-Dicke canonical basis states, crystal limit.

The raising/lowering operators act on a word site by site with q^{+-s_j/2}
tails: the local term at position k converts one letter (j <-> j+1) and
multiplies by q to the half-difference of (j count minus j+1 count) on each
side, negative on the left, positive on the right.

A q-Dicke state for a multiplicity label (m_1, ..., m_n) is the normalized
q-symmetrization of the ordered word x_1^{m_1} ... x_n^{m_n}; its coefficient
on a permuted word is q^(inversions).  These states are orthonormal and carry
the closed-form canonical action

    E_j b(..., k_j, k_{j+1}, ...) = sqrt([k_{j+1}+1]_q [k_j]_q) b(..., k_j - 1, k_{j+1} + 1, ...)

with F_j inverting it at the same coefficient and q^{H_j} acting by
q^(k_j - k_{j+1}).  At q -> 0 the states collapse onto their ordered words
and E/F degenerate to the combinatorial crystal moves.
"""

from itertools import combinations

import numpy as np

from . import automata
from .errors import SizeGuardError, ValidationError
from .hecke import bracket, bracket_factorial, q_symmetrize
from .states import TensorState, Word

Q_ONE_EPS = 1e-9

DickeLabel = tuple[int, ...]


def q_number(k: int, q: float) -> float:
    """[k]_q = (q^k - q^-k)/(q - q^-1), with the q -> 1 limit taken branchwise."""
    if abs(q - 1.0) < Q_ONE_EPS or abs(q + 1.0) < Q_ONE_EPS:
        # limit value; at q = -1 the limit is k * (-1)^(k+1), only reachable
        # through the expert negative-q path
        return float(k) if q > 0 else float(k) * (-1.0) ** (k + 1)
    return (q ** k - q ** -k) / (q - 1.0 / q)


def q_factorial(k: int, q: float) -> float:
    out = 1.0
    for j in range(1, k + 1):
        out *= q_number(j, q)
    return out


def q_binomial(m: int, k: int, q: float) -> float:
    if not 0 <= k <= m:
        raise ValidationError(f"q_binomial needs 0 <= k <= m, got k={k}, m={m}")
    return q_factorial(m, q) / (q_factorial(k, q) * q_factorial(m - k, q))


def bracket_number(m: int, xi: float) -> float:
    """[[m]] at base xi: (xi^2m - 1)/(xi^2 - 1)."""
    return bracket(m, xi * xi)


def bracket_number_factorial(m: int, xi: float) -> float:
    return bracket_factorial(m, xi * xi)


def _check_species_index(j: int, n: int, diagonal: bool) -> None:
    top = n if diagonal else n - 1
    if not 1 <= j <= top:
        raise ValidationError(f"operator index {j} out of range [1,{top}]")


def _tail_exponent(word: Word, j: int, k: int) -> float:
    """Exponent of q from the q^{+-s_j/2} tails around position k."""
    left = sum(1 if x == j else -1 if x == j + 1 else 0 for x in word[:k])
    right = sum(1 if x == j else -1 if x == j + 1 else 0 for x in word[k + 1:])
    return 0.5 * (right - left)


def _apply_ladder(state: TensorState, j: int, q: float, source: int, target: int) -> TensorState:
    out = {}
    for w, amp in state.amps.items():
        for k, x in enumerate(w):
            if x != source:
                continue
            w2 = w[:k] + (target,) + w[k + 1:]
            coeff = amp * q ** _tail_exponent(w, j, k)
            s = out.get(w2, 0.0) + coeff
            if s == 0.0:
                out.pop(w2, None)
            else:
                out[w2] = s
    return TensorState(state.n, state.N, out)


def apply_E(state: TensorState, j: int, q: float) -> TensorState:
    """Raising operator: one letter j becomes j+1."""
    _check_species_index(j, state.n, diagonal=False)
    return _apply_ladder(state, j, q, source=j, target=j + 1)


def apply_F(state: TensorState, j: int, q: float) -> TensorState:
    """Lowering operator: one letter j+1 becomes j."""
    _check_species_index(j, state.n, diagonal=False)
    return _apply_ladder(state, j, q, source=j + 1, target=j)


def apply_qEps(state: TensorState, j: int, q: float) -> TensorState:
    """Diagonal operator: multiplies each word by q^(count of letter j)."""
    _check_species_index(j, state.n, diagonal=True)
    return TensorState(state.n, state.N,
                       {w: a * q ** w.count(j) for w, a in state.amps.items()})


def apply_qH(state: TensorState, j: int, q: float) -> TensorState:
    """Diagonal operator: q^(count of j minus count of j+1) per word."""
    _check_species_index(j, state.n, diagonal=False)
    return TensorState(state.n, state.N,
                       {w: a * q ** (w.count(j) - w.count(j + 1)) for w, a in state.amps.items()})


def check_label(n: int, N: int, label) -> DickeLabel:
    label = tuple(int(m) for m in label)
    if len(label) != n or any(m < 0 or m > N for m in label) or sum(label) != N:
        raise ValidationError(f"label {label} is not a composition of {N} into {n} parts")
    return label


def dicke_labels(n: int, N: int) -> list[DickeLabel]:
    """All compositions of N into n nonnegative parts, lexicographically
    decreasing from (N, 0, ..., 0)."""
    out = []
    for cuts in combinations(range(N + n - 1), n - 1):
        bounds = (-1,) + cuts + (N + n - 1,)
        out.append(tuple(bounds[i + 1] - bounds[i] - 1 for i in range(n)))
    out.sort(reverse=True)
    return out


def ordered_word(label: DickeLabel) -> Word:
    w = []
    for letter, m in enumerate(label, start=1):
        w.extend([letter] * m)
    return tuple(w)


def dicke_norm(label: DickeLabel, q: float) -> float:
    """Norm of the unnormalized q-symmetric state: sqrt([[N]]!/prod [[m_i]]!)."""
    N = sum(label)
    denom = 1.0
    for m in label:
        denom *= bracket_number_factorial(m, q)
    return (bracket_number_factorial(N, q) / denom) ** 0.5


def q_dicke(n: int, N: int, label, q: float) -> TensorState:
    """Unit-norm q-symmetric state for the given multiplicity label.

    Built by q-symmetrizing the ordered word, dividing by the bracket
    factorials of the multiplicities, then by the closed-form norm; the
    result has coefficient q^(inversions) / norm on each permuted word.
    """
    label = check_label(n, N, label)
    if q <= 0:
        raise ValidationError("q must be positive")
    state = q_symmetrize(TensorState.basis(n, ordered_word(label)), q)
    scale = 1.0
    for m in label:
        scale *= bracket_number_factorial(m, q)
    return state.scale(1.0 / (scale * dicke_norm(label, q)))


def verify_canonical_action(n: int, N: int, q: float, label, j: int) -> dict:
    """Check the closed-form action of E_j, F_j, q^{H_j} on a q-Dicke state.

    Returns the expected coefficient and the residual norms of
    E_j b - c b', F_j b' - c b, and (q^{H_j} - q^(k_j - k_{j+1})) b.
    """
    label = check_label(n, N, label)
    _check_species_index(j, n, diagonal=False)
    kj, kj1 = label[j - 1], label[j]
    b = q_dicke(n, N, label, q)
    report = {"label": label, "j": j,
              "qh_eigenvalue": q ** (kj - kj1),
              "residual_qH": apply_qH(b, j, q).sub(b.scale(q ** (kj - kj1))).norm()}
    if kj == 0:
        report["coefficient"] = 0.0
        report["residual_E"] = apply_E(b, j, q).norm()
        report["residual_F"] = None
        return report
    raised = list(label)
    raised[j - 1] -= 1
    raised[j] += 1
    b_up = q_dicke(n, N, tuple(raised), q)
    c = (q_number(kj1 + 1, q) * q_number(kj, q)) ** 0.5
    report["coefficient"] = c
    report["residual_E"] = apply_E(b, j, q).sub(b_up.scale(c)).norm()
    report["residual_F"] = apply_F(b_up, j, q).sub(b.scale(c)).norm()
    return report


def generate_basis_by_raising(n: int, N: int, q: float) -> dict[DickeLabel, TensorState]:
    """All q-Dicke states built by E-strings from the reference word x_1^N.

    For a label (k_1, ..., k_n) the string applies E_1 (k_2 + ... + k_n)
    times, then E_2 (k_3 + ... + k_n) times, and so on; each result is
    normalized.  Agrees with q_dicke label by label.
    """
    if n ** N > 10 ** 6:
        raise SizeGuardError(f"n^N = {n**N} exceeds the raising guard 10^6")
    out = {}
    for label in dicke_labels(n, N):
        state = TensorState.basis(n, (1,) * N)
        for j in range(1, n):
            power = sum(label[j:])
            for _ in range(power):
                state = apply_E(state, j, q)
        if state.is_zero():
            raise ValidationError(f"raising string annihilated the state for label {label}")
        out[label] = state.normalized()
    return out


def crystal_e(j: int, word, n: int | None = None):
    """Crystal raising move on an ordered word: one letter j becomes j+1;
    None when there is no letter j."""
    word = tuple(word)
    n = n if n is not None else max(word)
    if any(word[i] > word[i + 1] for i in range(len(word) - 1)):
        raise ValidationError(f"crystal moves are defined on ordered words, got {word}")
    _check_species_index(j, n, diagonal=False)
    if j not in word:
        return None
    k = word.index(j) + word.count(j) - 1  # rightmost j
    return tuple(sorted(word[:k] + (j + 1,) + word[k + 1:]))


def crystal_f(j: int, word, n: int | None = None):
    """Crystal lowering move: one letter j+1 becomes j; None when impossible."""
    word = tuple(word)
    n = n if n is not None else max(word)
    if any(word[i] > word[i + 1] for i in range(len(word) - 1)):
        raise ValidationError(f"crystal moves are defined on ordered words, got {word}")
    _check_species_index(j, n, diagonal=False)
    if j + 1 not in word:
        return None
    k = word.index(j + 1)
    return tuple(sorted(word[:k] + (j,) + word[k + 1:]))


def crystal_automaton(n: int, N: int, q: float | None = None, labels: str = "none"):
    """The symmetric crystal automaton on ordered words as a combinatorial
    automaton (for DOT export).

    With labels="canonical" or "rescaled" the DOT edge weights carry the
    q-coefficients of the corresponding raising/lowering action on q-Dicke
    states: canonical uses the symmetric sqrt form on both E and F; rescaled
    uses 1 on E and the product form on F.
    """
    if labels not in ("none", "canonical", "rescaled"):
        raise ValidationError("labels must be none, canonical, or rescaled")
    if labels != "none" and (q is None or q <= 0):
        raise ValidationError("coefficient labels need a positive q")
    states = [ordered_word(lab) for lab in dicke_labels(n, N)]
    index = {w: i for i, w in enumerate(states)}
    triples = []
    weights = {}
    for w in states:
        lab = tuple(w.count(a) for a in range(1, n + 1))
        for j in range(1, n):
            up = crystal_e(j, w, n)
            if up is not None:
                triples.append((index[w], f"e{j}", index[up]))
                if labels != "none":
                    c = (q_number(lab[j] + 1, q) * q_number(lab[j - 1], q)) ** 0.5
                    weights[(index[w], f"e{j}", index[up])] = 1.0 if labels == "rescaled" else c
            down = crystal_f(j, w, n)
            if down is not None:
                triples.append((index[w], f"f{j}", index[down]))
                if labels != "none":
                    c = (q_number(lab[j - 1] + 1, q) * q_number(lab[j], q)) ** 0.5
                    weights[(index[w], f"f{j}", index[down])] = c * c if labels == "rescaled" else c
    letters = [f"e{j}" for j in range(1, n)] + [f"f{j}" for j in range(1, n)]
    mats = {a: np.zeros((len(states), len(states))) for a in letters}
    for s, a, t in triples:
        mats[a][t, s] = weights.get((s, a, t), 1.0)
    kind = "combinatorial" if labels == "none" else "general"
    transitions = {a: automata.TransitionMatrix(m, kind) for a, m in mats.items()}
    word_names = tuple("".join(f"x{x}" for x in w) for w in states)
    return automata.Automaton(len(states), tuple(letters), transitions, 1,
                              frozenset(), word_names)
