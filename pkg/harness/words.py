"""
Length-then-lexicographic word enumeration over a token alphabet.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Iterator


def enumerate_words(alphabet: Iterable[str], max_len: int) -> Iterator[tuple[str, ...]]:
    """
    Every word of length 0..max_len, shortest first; words of equal length
    follow the order of `alphabet`. The stream is lazy.
    """
    tokens = tuple(dict.fromkeys(str(token) for token in alphabet))
    if not tokens:
        raise ValueError("Cannot enumerate words over an empty alphabet")
    if max_len < 0:
        raise ValueError(f"Length bound must be nonnegative, got {max_len}")
    for length in range(max_len + 1):
        yield from itertools.product(tokens, repeat=length)


def word_count(alphabet_size: int, max_len: int) -> int:
    return sum(alphabet_size ** i for i in range(max_len + 1))


def render_word(word: Iterable[str]) -> str:
    """Space-separated tokens; the empty word renders as ''."""
    return ' '.join(word)


def parse_tokens(text: str | None) -> tuple[str, ...]:
    return tuple((text or '').split())
