"""Sampled models of the matrix-function algebras D_n, D_n^{1,n} and D_n^{CI}.

Elements are n x n matrix functions on [0, inf] stored by their values on a
compactified grid. Membership is the computable fragment of the structure
theorems: the endpoint conditions.

* ``D_n``: M(0) and M(inf) are diagonal.
* ``D_n^{1,n}``: additionally M_jj(0) = M_jj(inf) for 2 <= j <= n-1.
* ``D_n^{CI}``: M(0) and M(inf) are scalar and M(0) = M(inf).

Words over the generators P_gamma (``P``), gamma^{n,a_0} (``G``) and Q_j
(``Qj``) are evaluated pointwise; ``separate`` searches them breadth-first
for one that tells two pure states f_{x,v}(M) = <M(x) v, v> apart.
"""

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import AlphabetError, MissingEndpointError, NotSeparableError
from .projections import p_gamma, q_projection
from .spectral import CompactifiedGrid, gamma_a0_matrix

ALGEBRAS = ("D_n", "D_n^{1,n}", "D_n^{CI}")
ALPHABETS = ("projection", "toeplitz")
SEPARATION_THRESHOLD = 1e-8
DEFAULT_MAX_LEN = 5
WORD_CAP = 64
_LETTER = re.compile(r"^(P|G|Q([1-9][0-9]*))(\*?)$")


@dataclass(frozen=True)
class SampledMatrixFunction:
    n: int
    grid: CompactifiedGrid
    values: np.ndarray  # (len(grid.points()), n, n)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != (self.grid.points().size, self.n, self.n):
            raise ValueError(f"values must have shape (points, {self.n}, {self.n}), "
                             f"got {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must be finite")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(cls, n, grid, func):
        """Sample ``func(x) -> n x n`` at every grid point, endpoints included."""
        return cls(n, grid, np.array([np.asarray(func(x)) for x in grid.points()]))

    def at_zero(self):
        if not self.grid.includes_zero:
            raise MissingEndpointError("sampled function has no value at 0")
        return self.values[0]

    def at_infinity(self):
        if not self.grid.includes_infinity:
            raise MissingEndpointError("sampled function has no value at infinity")
        return self.values[-1]


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    residual: float


def _offdiag(m):
    return float(np.max(np.abs(m - np.diag(np.diag(m))), initial=0.0))


def _from_scalar(m):
    n = m.shape[0]
    return float(np.max(np.abs(m - np.trace(m) / n * np.eye(n))))


def membership(m, algebra="D_n", tol=1e-10):
    """Check the endpoint conditions of ``algebra``; returns the max-norm residual."""
    if algebra not in ALGEBRAS:
        raise ValueError(f"unknown algebra {algebra!r}; expected one of {ALGEBRAS}")
    m0, minf = m.at_zero(), m.at_infinity()
    if algebra == "D_n":
        residual = max(_offdiag(m0), _offdiag(minf))
    elif algebra == "D_n^{1,n}":
        inner = np.abs(np.diag(m0)[1:-1] - np.diag(minf)[1:-1])
        residual = max(_offdiag(m0), _offdiag(minf), float(np.max(inner, initial=0.0)))
    else:
        residual = max(_from_scalar(m0), _from_scalar(minf), float(np.max(np.abs(m0 - minf))))
    return MembershipResult(residual <= tol, residual)


@dataclass(frozen=True)
class GeneratorWord:
    """Finite product of generator letters, read left to right.

    Letters are ``P`` (P_gamma), ``G`` (gamma^{n,a_0}) and ``Q1``, ``Q2``, ...;
    a trailing ``*`` marks the adjoint.
    """

    letters: tuple

    def __post_init__(self):
        letters = tuple(self.letters)
        if not letters:
            raise AlphabetError("a word needs at least one letter")
        if len(letters) > WORD_CAP:
            raise AlphabetError(f"word longer than {WORD_CAP}")
        for letter in letters:
            if not _LETTER.match(letter):
                raise AlphabetError(f"bad letter {letter!r}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text):
        """``"Q1 P Q2"`` or ``"Q1,P,Q2"``."""
        return cls(tuple(t for t in re.split(r"[\s,]+", text.strip()) if t))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ".join(self.letters)

    def check(self, n, alphabet=None):
        """Raise ``AlphabetError`` unless every letter is valid for n (and the alphabet)."""
        allowed = {"projection": "P", "toeplitz": "G"}.get(alphabet)
        for letter in self.letters:
            base = letter.rstrip("*")
            if base.startswith("Q"):
                if not 1 <= int(base[1:]) <= n:
                    raise AlphabetError(f"{letter} is not a letter for n = {n}")
            elif allowed is not None and base != allowed:
                raise AlphabetError(f"{letter} is not in the {alphabet} alphabet")


def generator_value(letter, n, alpha, x):
    """Value at x in [0, inf] of one generator letter (adjoint applied)."""
    base = letter.rstrip("*")
    if base == "P":
        m = p_gamma(n, x).entries
    elif base == "G":
        m = gamma_a0_matrix(n, alpha, x).entries
    elif base.startswith("Q"):
        j = int(base[1:])
        if not 1 <= j <= n:
            raise AlphabetError(f"{letter} is not a letter for n = {n}")
        m = q_projection(j, n).entries
    else:
        raise AlphabetError(f"bad letter {letter!r}")
    m = np.asarray(m, dtype=complex)
    return m.conj().T if letter.endswith("*") else m


def evaluate_word(w, n, alpha, x):
    """Left-to-right product of the generator values at x."""
    if not isinstance(w, GeneratorWord):
        w = GeneratorWord(tuple(w))
    w.check(n)
    out = np.eye(n, dtype=complex)
    for letter in w.letters:
        out = out @ generator_value(letter, n, alpha, x)
    return out


def sample_word(w, n, alpha, grid):
    return SampledMatrixFunction.from_callable(n, grid, lambda x: evaluate_word(w, n, alpha, x))


@dataclass(frozen=True)
class PureState:
    """f_{x,v}(M) = <M(x) v, v>; at 0 and inf only basis vectors are allowed."""

    x: float
    v: np.ndarray

    def __post_init__(self):
        x = float(self.x)
        v = np.asarray(self.v, dtype=complex).ravel()
        if not x >= 0:
            raise ValueError("x must lie in [0, inf]")
        if abs(np.linalg.norm(v) - 1.0) > 1e-10:
            raise ValueError("v must be a unit vector")
        if self.is_endpoint(x) and np.count_nonzero(np.abs(v) > 1e-12) != 1:
            raise ValueError("pure states at 0 and inf use basis vectors only")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "v", v)

    @staticmethod
    def is_endpoint(x):
        return x == 0.0 or math.isinf(x)

    @property
    def n(self):
        return self.v.size

    def basis_index(self):
        """1-based j if v is a unimodular multiple of e_j, else None."""
        big = np.flatnonzero(np.abs(self.v) > 1e-12)
        return int(big[0]) + 1 if big.size == 1 else None


def pure_state_apply(s, m):
    """<M v, v> for the state s and a matrix M (the value M(s.x))."""
    m = np.asarray(m)
    if m.shape != (s.n, s.n):
        raise ValueError(f"matrix shape {m.shape} does not match state dimension {s.n}")
    return complex(np.vdot(s.v, m @ s.v))


def states_equivalent(s1, s2, alphabet="projection", tol=1e-12):
    """True when s1 and s2 are the same state on the generated algebra.

    Same point and v = lambda w with |lambda| = 1; for the projection
    alphabet also (0, e_j) ~ (inf, e_j) for 2 <= j <= n-1, since every
    element of D_n^{1,n} takes equal values there.
    """
    if s1.n != s2.n:
        return False
    if s1.x == s2.x and abs(abs(np.vdot(s1.v, s2.v)) - 1.0) <= tol:
        return True
    if alphabet == "projection" and s1.is_endpoint(s1.x) and s2.is_endpoint(s2.x):
        j, k = s1.basis_index(), s2.basis_index()
        return j == k and 2 <= j <= s1.n - 1
    if alphabet == "projection" and s1.n == 1:
        return True  # P_gamma = Q_1 = 1
    return False


@dataclass(frozen=True)
class SeparationResult:
    word: GeneratorWord
    gap: float
    values: tuple


def _alphabet_letters(alphabet, n):
    if alphabet not in ALPHABETS:
        raise AlphabetError(f"unknown alphabet {alphabet!r}; expected one of {ALPHABETS}")
    return ("P" if alphabet == "projection" else "G",) + tuple(f"Q{j}" for j in range(1, n + 1))


def _redundant(prev, nxt):
    # P P = P and Q_j Q_k is Q_j or 0; neither adds a new element.
    return prev is not None and prev != "G" and nxt != "G" and (prev == nxt or (
        prev.startswith("Q") and nxt.startswith("Q")))


def separate(s1, s2, alphabet="projection", n=None, alpha=2.0,
             max_len=DEFAULT_MAX_LEN, threshold=SEPARATION_THRESHOLD):
    """Breadth-first search for a word w with |f_{s1}(w) - f_{s2}(w)| > threshold.

    Among the separating words of the shortest length found, the one with
    the largest gap is returned. Raises ``NotSeparableError`` with the best
    gap seen when no word of length <= max_len separates.
    """
    n = s1.n if n is None else n
    if s1.n != n or s2.n != n:
        raise ValueError("state dimensions do not match n")
    letters = _alphabet_letters(alphabet, n)
    gens = [np.array([generator_value(c, n, alpha, s.x) for c in letters]) for s in (s1, s2)]
    # frontier: products for each state, shape (count, n, n), plus their words
    words = [()]
    mats = [np.eye(n, dtype=complex)[None], np.eye(n, dtype=complex)[None]]
    best_gap, best_word = 0.0, None
    for _ in range(max_len):
        new_words, idx_prev, idx_gen = [], [], []
        for i, w in enumerate(words):
            last = w[-1] if w else None
            for g, c in enumerate(letters):
                if not _redundant(last, c):
                    new_words.append(w + (c,))
                    idx_prev.append(i)
                    idx_gen.append(g)
        idx_prev, idx_gen = np.array(idx_prev), np.array(idx_gen)
        mats = [m[idx_prev] @ gen[idx_gen] for m, gen in zip(mats, gens)]
        vals = [np.einsum("i,wij,j->w", s.v.conj(), m, s.v) for s, m in zip((s1, s2), mats)]
        gaps = np.abs(vals[0] - vals[1])
        words = new_words
        i = int(np.argmax(gaps))
        if gaps[i] > best_gap:
            best_gap, best_word = float(gaps[i]), GeneratorWord(words[i])
        if gaps[i] > threshold:
            return SeparationResult(GeneratorWord(words[i]), float(gaps[i]),
                                    (complex(vals[0][i]), complex(vals[1][i])))
    raise NotSeparableError(
        f"no word of length <= {max_len} separates the states (best gap {best_gap:.3g})",
        best_gap=best_gap, best_word=best_word)


def random_word(rng, alphabet, n, max_len=6, adjoint_prob=0.1):
    """Uniform length in 1..max_len, uniform letters, occasional adjoint marks."""
    letters = _alphabet_letters(alphabet, n)
    length = int(rng.integers(1, max_len + 1))
    picks = rng.integers(0, len(letters), size=length)
    marks = rng.random(length) < adjoint_prob
    return GeneratorWord(tuple(letters[p] + ("*" if m else "") for p, m in zip(picks, marks)))


def random_pure_state(rng, n, x_range=(0.05, 2.0), endpoint_prob=0.2):
    """Endpoint state (random basis vector and phase) with probability
    ``endpoint_prob``; otherwise x log-uniform in ``x_range`` and v uniform
    on the complex unit sphere.

    The default range keeps every gamma^{a_k}(x), n <= 5, above 1e-7: past
    it, states at x and at an endpoint differ by less than the separation
    threshold even though they are distinct in exact arithmetic.
    """
    if rng.random() < endpoint_prob:
        x = 0.0 if rng.random() < 0.5 else math.inf
        v = np.zeros(n, dtype=complex)
        v[rng.integers(n)] = np.exp(2j * math.pi * rng.random())
        return PureState(x, v)
    lo, hi = x_range
    x = float(np.exp(rng.uniform(math.log(lo), math.log(hi))))
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return PureState(x, v / np.linalg.norm(v))


def random_distinct_pair(rng, n, alphabet="projection", share_prob=0.6, **kw):
    """Two inequivalent random pure states.

    With probability ``share_prob`` the second state is derived from the
    first: same vector at another point, same point with another vector,
    same point and moduli with fresh relative phases, or the conjugate
    vector at the same point. The last kind agrees on every Hermitian word,
    so only longer words like Q_j P Q_k tell it apart.
    """
    while True:
        s1, s2 = random_pure_state(rng, n, **kw), random_pure_state(rng, n, **kw)
        if rng.random() < share_prob:
            mode = int(rng.integers(4))
            if mode == 0 and (s1.basis_index() or not s2.is_endpoint(s2.x)):
                s2 = PureState(s2.x, s1.v * np.exp(2j * math.pi * rng.random()))
            elif mode == 1 and (s2.basis_index() or not s1.is_endpoint(s1.x)):
                s2 = PureState(s1.x, s2.v)
            elif mode == 2:
                s2 = PureState(s1.x, s1.v * np.exp(2j * math.pi * rng.random(n)))
            else:
                s2 = PureState(s1.x, s1.v.conj())
        if not states_equivalent(s1, s2, alphabet):
            return s1, s2
