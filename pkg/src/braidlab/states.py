"""Sparse states in the N-fold tensor power of an n-dimensional space.

A state is a map from words (tuples of letters 1..n, length N) to scalar
amplitudes.  Operators act word by word, so the cost of one local operator
is linear in the number of stored amplitudes; the full n^N space is never
materialized except in the dense oracles used by the tests.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

Word = tuple[int, ...]

_PRUNE = 0.0  # drop exact zeros only; cancellations are meaningful


@dataclass(frozen=True)
class TensorState:
    """Element of V_n^{⊗N}, stored as word -> amplitude."""

    n: int
    N: int
    amps: dict = field(default_factory=dict)

    def __post_init__(self):
        for w in self.amps:
            if len(w) != self.N or any(x < 1 or x > self.n for x in w):
                raise ValidationError(f"word {w} not in [1,{self.n}]^{self.N}")

    @classmethod
    def basis(cls, n: int, word: Word) -> "TensorState":
        word = tuple(word)
        return cls(n, len(word), {word: 1.0})

    @classmethod
    def zero(cls, n: int, N: int) -> "TensorState":
        return cls(n, N, {})

    def is_zero(self) -> bool:
        return not self.amps

    def norm(self) -> float:
        return float(np.sqrt(sum(abs(a) ** 2 for a in self.amps.values())))

    def inner(self, other: "TensorState") -> complex | float:
        """<self|other> with conjugation on self."""
        if len(self.amps) <= len(other.amps):
            pairs = ((a, other.amps.get(w)) for w, a in self.amps.items())
        else:
            pairs = ((self.amps.get(w), b) for w, b in other.amps.items())
        total = sum(np.conjugate(a) * b for a, b in pairs if a is not None and b is not None)
        total = complex(total)
        return total if total.imag != 0.0 else total.real

    def scale(self, c) -> "TensorState":
        if c == 0:
            return TensorState.zero(self.n, self.N)
        return TensorState(self.n, self.N, {w: c * a for w, a in self.amps.items()})

    def add(self, other: "TensorState") -> "TensorState":
        out = dict(self.amps)
        for w, a in other.amps.items():
            s = out.get(w, 0.0) + a
            if s == _PRUNE:
                out.pop(w, None)
            else:
                out[w] = s
        return TensorState(self.n, self.N, out)

    def sub(self, other: "TensorState") -> "TensorState":
        return self.add(other.scale(-1.0))

    def normalized(self) -> "TensorState":
        nrm = self.norm()
        if nrm == 0.0:
            raise ValidationError("cannot normalize the zero state")
        return self.scale(1.0 / nrm)

    def to_dense(self) -> np.ndarray:
        """Row-major dense vector; index of word (i_1..i_N) is sum (i_k-1) n^(N-k)."""
        dtype = complex if any(isinstance(a, complex) for a in self.amps.values()) else float
        v = np.zeros(self.n ** self.N, dtype=dtype)
        for w, a in self.amps.items():
            v[word_index(w, self.n)] = a
        return v

    @classmethod
    def from_dense(cls, v: np.ndarray, n: int, N: int, tol: float = 0.0) -> "TensorState":
        amps = {}
        for idx, a in enumerate(v):
            if abs(a) > tol:
                amps[index_word(idx, n, N)] = complex(a) if np.iscomplexobj(v) else float(a)
        return cls(n, N, amps)


def word_index(word: Word, n: int) -> int:
    idx = 0
    for x in word:
        idx = idx * n + (x - 1)
    return idx


def index_word(idx: int, n: int, N: int) -> Word:
    out = []
    for _ in range(N):
        out.append(idx % n + 1)
        idx //= n
    return tuple(reversed(out))


def all_words(n: int, N: int) -> list[Word]:
    """All n^N words in lexicographic order."""
    return [index_word(i, n, N) for i in range(n ** N)]


def residual(actual: TensorState, expected: TensorState) -> float:
    """Euclidean distance between two sparse states."""
    return actual.sub(expected).norm()
