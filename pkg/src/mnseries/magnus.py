"""Reduced words in free groups and their embedding into truncated power
series over the free monoid, sending each generator to 1 + generator and each
inverse generator to the truncated geometric series.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scalars import QQ
from .series import GradedSeries

LETTERS = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class FreeMonoid:
    """Support context for the free monoid on a finite alphabet; elements are
    plain strings, the identity is the empty string, weight is the length."""

    size: int

    graded = True

    def __post_init__(self):
        if not 1 <= self.size <= len(LETTERS):
            raise ValueError(f"alphabet size must be in 1..{len(LETTERS)}")

    @property
    def id(self) -> str:
        return f"free:{self.size}"

    @property
    def alphabet(self) -> str:
        return LETTERS[: self.size]

    def identity(self):
        return ""

    def contains(self, w) -> bool:
        return isinstance(w, str) and all(ch in self.alphabet for ch in w)

    def multiply(self, u, v):
        return u + v

    def in_monoid(self, w) -> bool:
        return self.contains(w)

    def weight(self, w) -> int:
        return len(w)

    def format_element(self, w) -> str:
        return w if w else "1"

    def parse_element(self, text: str):
        text = text.strip()
        if text == "1":
            return ""
        if not self.contains(text):
            raise ValueError(f"not a word over {self.alphabet!r}: {text!r}")
        return text

    def sample_monoid_element(self, rng, max_weight: int):
        length = rng.randint(0, max_weight)
        return "".join(rng.choice(self.alphabet) for _ in range(length))


@dataclass(frozen=True)
class FreeWord:
    """Reduced word in the free group on `size` letters: a tuple of
    (symbol index, sign) pairs with no adjacent cancelling pair."""

    size: int
    letters: tuple

    def __post_init__(self):
        for sym, sign in self.letters:
            if not (0 <= sym < self.size) or sign not in (1, -1):
                raise ValueError(f"bad letter ({sym}, {sign}) for alphabet size {self.size}")
        for (s1, e1), (s2, e2) in zip(self.letters, self.letters[1:]):
            if s1 == s2 and e1 == -e2:
                raise ValueError("word is not reduced")

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other):
        if not isinstance(other, FreeWord) or other.size != self.size:
            raise ValueError("cannot multiply words over different alphabets")
        return word_reduce(self.letters + other.letters, self.size)

    def inverse(self):
        return FreeWord(self.size, tuple((s, -e) for s, e in reversed(self.letters)))

    def __str__(self):
        out = []
        for sym, sign in self.letters:
            out.append(LETTERS[sym] + ("" if sign == 1 else "'"))
        return "".join(out) if out else "1"


def word_reduce(raw, size: int) -> FreeWord:
    """Freely reduce a sequence of (symbol, sign) letters; the result is
    independent of cancellation order."""
    stack = []
    for sym, sign in raw:
        if stack and stack[-1][0] == sym and stack[-1][1] == -sign:
            stack.pop()
        else:
            stack.append((sym, sign))
    return FreeWord(size, tuple(stack))


def parse_word(text: str, size: int | None = None) -> FreeWord:
    """Word syntax: letters a..z, inverse marked with a trailing apostrophe,
    "1" for the identity. Letters beyond the alphabet are rejected."""
    text = text.strip()
    letters = []
    if text != "1":
        i = 0
        while i < len(text):
            ch = text[i]
            if ch not in LETTERS:
                raise ValueError(f"bad letter {ch!r} in word {text!r}")
            sym = LETTERS.index(ch)
            sign = 1
            if i + 1 < len(text) and text[i + 1] == "'":
                sign = -1
                i += 1
            letters.append((sym, sign))
            i += 1
    if size is None:
        size = max((s for s, _ in letters), default=0) + 1
    for sym, _ in letters:
        if sym >= size:
            raise ValueError(f"letter {LETTERS[sym]!r} exceeds alphabet of size {size}")
    return word_reduce(letters, size)


def enumerate_reduced_words(size: int, max_length: int) -> list:
    """All reduced words of length at most max_length, each exactly once, in
    (length, lexicographic) order. The count is 1 + sum over lengths l of
    2k(2k-1)^(l-1)."""
    if max_length < 0:
        raise ValueError("max_length must be nonnegative")
    alphabet = [(sym, sign) for sym in range(size) for sign in (1, -1)]
    words = [FreeWord(size, ())]
    level = [()]
    for _ in range(max_length):
        next_level = []
        for letters in level:
            for sym, sign in alphabet:
                if letters and letters[-1][0] == sym and letters[-1][1] == -sign:
                    continue
                next_level.append(letters + ((sym, sign),))
        words.extend(FreeWord(size, ls) for ls in next_level)
        level = next_level
    return words


def magnus_image(word: FreeWord, degree: int, field=QQ) -> GradedSeries:
    """Image of a reduced word under the multiplicative extension of
    letter -> 1 + letter, with inverse letters expanded eagerly to the
    truncated geometric series. Computed by truncated products left to
    right."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    monoid = FreeMonoid(word.size)
    image = GradedSeries.one(monoid, degree, field)
    one = field.one
    for sym, sign in word.letters:
        letter = LETTERS[sym]
        if sign == 1:
            factor = GradedSeries(
                monoid, degree, {"": one, letter: one}, field, validate=False
            )
        else:
            terms = {}
            coeff = one
            for j in range(degree + 1):
                terms[letter * j] = coeff
                coeff = -coeff
            factor = GradedSeries(monoid, degree, terms, field, validate=False)
        image = image * factor
    return image


@dataclass
class MagnusReport:
    injective: bool
    alphabet_size: int
    max_length: int
    degree: int
    word_count: int
    collision: tuple | None = None

    def to_json(self):
        collision = None
        if self.collision is not None:
            collision = [str(self.collision[0]), str(self.collision[1])]
        return {
            "injective": self.injective,
            "k": self.alphabet_size,
            "L": self.max_length,
            "D": self.degree,
            "word_count": self.word_count,
            "collision": collision,
        }


def verify_magnus_injectivity(size: int, max_length: int, degree: int, field=QQ) -> MagnusReport:
    """Check that all reduced words of length at most max_length have
    pairwise distinct truncated images. Requires degree >= max_length; the
    separation at that degree is verified, not assumed."""
    if degree < max_length:
        raise ValueError("degree must be at least the maximum word length")
    words = enumerate_reduced_words(size, max_length)
    seen = {}
    for w in words:
        key = magnus_image(w, degree, field).key()
        if key in seen:
            return MagnusReport(False, size, max_length, degree, len(words), (seen[key], w))
        seen[key] = w
    return MagnusReport(True, size, max_length, degree, len(words))
