"""Word/phrase vectors and string edit distance.

Vectors come either from a plain-text word2vec/fastText-style file or from a
deterministic pseudo-random provider used in tests and embedding-free runs.
"""

from __future__ import annotations

import math
import random
from typing import Iterable, Optional

Vector = tuple[float, ...]


class MalformedLine(ValueError):
    """A vector-file line had the wrong number of components."""


class EmptyVocabulary(ValueError):
    """The vector file contained no usable entries."""


class EmbeddingProvider:
    """Deterministic token -> vector lookup with a fixed dimension."""

    def __init__(self, dimension: int):
        self.dimension = dimension
        # phrase-vector memo, keyed by (tokens, normalize); see phrase_vector()
        self._phrase_cache: dict = {}

    def lookup(self, token: str) -> Optional[Vector]:
        raise NotImplementedError


class VocabularyProvider(EmbeddingProvider):
    def __init__(self, vocabulary: dict[str, Vector], dimension: int):
        super().__init__(dimension)
        self.vocabulary = vocabulary

    def lookup(self, token: str) -> Optional[Vector]:
        # verbatim first, lowercase fallback (pretrained files are often lowercased)
        hit = self.vocabulary.get(token)
        if hit is None:
            hit = self.vocabulary.get(token.lower())
        return hit


class DeterministicProvider(EmbeddingProvider):
    """Every token maps to a pseudo-random unit vector derived only from
    (seed, token bytes). Identical tokens always collide."""

    def __init__(self, seed: int, dimension: int = 8):
        if dimension < 2:
            raise ValueError("dimension must be >= 2")
        super().__init__(dimension)
        self.seed = seed
        self._cache: dict[str, Vector] = {}

    def lookup(self, token: str) -> Optional[Vector]:
        vec = self._cache.get(token)
        if vec is None:
            rng = random.Random(f"{self.seed}\x00{token}")
            raw = [rng.uniform(-1.0, 1.0) for _ in range(self.dimension)]
            norm = math.sqrt(sum(x * x for x in raw))
            if norm == 0.0:  # astronomically unlikely; retry path keeps the contract
                raw[0] = 1.0
                norm = 1.0
            vec = tuple(x / norm for x in raw)
            self._cache[token] = vec
        return vec


def deterministic_test_provider(seed: int, dimension: int = 8) -> DeterministicProvider:
    return DeterministicProvider(seed, dimension)


def load_vector_file(path) -> VocabularyProvider:
    """Parse a plain-text vector file: optional "count dim" header, then
    "token c1 c2 ... cd" lines. Duplicate tokens keep the first occurrence."""
    vocab: dict[str, Vector] = {}
    dim: Optional[int] = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            if lineno == 1 and len(parts) == 2:
                try:
                    int(parts[0]), int(parts[1])
                except ValueError:
                    pass
                else:
                    dim = int(parts[1])
                    continue
            token, comps = parts[0], parts[1:]
            try:
                vec = tuple(float(c) for c in comps)
            except ValueError as exc:
                raise MalformedLine(f"line {lineno}: non-numeric component") from exc
            if dim is None:
                dim = len(vec)
            if len(vec) != dim or not vec:
                raise MalformedLine(
                    f"line {lineno}: expected {dim} components, got {len(vec)}")
            vocab.setdefault(token, vec)
    if not vocab:
        raise EmptyVocabulary("vector file contains no entries")
    return VocabularyProvider(vocab, dim)


def normalize(vec: Iterable[float]) -> Optional[Vector]:
    v = tuple(vec)
    norm = math.sqrt(sum(x * x for x in v))
    if norm == 0.0:
        return None
    return tuple(x / norm for x in v)


def phrase_vector(tokens, p: EmbeddingProvider, normalize_result: bool = False) -> Optional[Vector]:
    """Average of in-vocabulary token vectors; None when every token misses.

    Out-of-vocabulary tokens are skipped rather than poisoning the phrase.
    """
    key = (tuple(tokens), normalize_result)
    cached = p._phrase_cache.get(key)
    if cached is not None or key in p._phrase_cache:
        return cached
    vecs = [v for v in (p.lookup(tok) for tok in tokens) if v is not None]
    if not vecs:
        result: Optional[Vector] = None
    else:
        n = len(vecs)
        avg = tuple(sum(col) / n for col in zip(*vecs))
        result = normalize(avg) if normalize_result else avg
    p._phrase_cache[key] = result
    return result


def levenshtein(a: str, b: str) -> int:
    """Unit-cost insert/delete/substitute edit distance."""
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1,
                           cur[j - 1] + 1,
                           prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]
