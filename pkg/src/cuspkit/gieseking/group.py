"""
The Gieseking group Γ = ⟨f, g | g⁻¹f⁻¹g²f²⟩ and its bounded length spectrum.

Words are written with lowercase letters for generators and uppercase for
their inverses; a word is evaluated as the composition of its letters from
left to right, so the rightmost letter acts first.
"""
import cmath
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from ..context import Tolerance, get_tolerance, resolve_threads, tolerance_context
from ..core.domain import CuspkitError
from ..core.isom3 import Isometry, Kind, classify, compose, inverse
from ..core.limits import LimitConfig, ResourceBudget, ResourceLimit

logger = logging.getLogger(__name__)

OMEGA = cmath.exp(1j * math.pi / 3)

LETTERS = ("f", "F", "g", "G")
INVERSE_LETTER = {"f": "F", "F": "f", "g": "G", "G": "g"}
RELATOR = ("G", "F", "g", "g", "f", "f")

SYSTOLE = 2 * math.acosh((1 + math.sqrt(13)) / 4)
NEGATIVE_LOXODROMIC_LENGTH = 2 * math.acosh(math.sqrt(1.5))


class ConstructionMismatch(CuspkitError):
    """Raised when a computed invariant of the explicit construction deviates from its closed form."""
    def __init__(self, what: str, value, expected):
        self.what = what
        self.value = value
        self.expected = expected
        super().__init__(f"{what}: computed {value}, expected {expected}")

    def __reduce__(self):
        return type(self), (self.what, self.value, self.expected)


def generators() -> Tuple[Isometry, Isometry]:
    """f: z -> (z̄ - 1)/(-ω) and g: z -> ω z̄/(z̄ + ω), both orientation-reversing."""
    f = Isometry.from_matrix(1, -1, 0, -OMEGA, orientation=-1)
    g = Isometry.from_matrix(OMEGA, 0, 1, OMEGA, orientation=-1)
    return f, g


def generator_table() -> Dict[str, Isometry]:
    f, g = generators()
    return {"f": f, "F": inverse(f), "g": g, "G": inverse(g)}


def evaluate(letters: Iterable[str], table: Optional[Dict[str, Isometry]] = None) -> Isometry:
    table = table or generator_table()
    result = Isometry.identity()
    for letter in letters:
        result = compose(result, table[letter])
    return result


def is_freely_reduced(letters: Tuple[str, ...]) -> bool:
    return all(INVERSE_LETTER[x] != y for x, y in zip(letters, letters[1:]))


@dataclass(frozen=True)
class Word:
    """A freely reduced word in f, g and their inverses, with its isometry."""
    letters: Tuple[str, ...]
    isometry: Isometry

    def __post_init__(self):
        if not is_freely_reduced(self.letters):
            raise ValueError(f"Word {''.join(self.letters)} is not freely reduced")

    @classmethod
    def from_letters(cls, letters: Iterable[str]) -> "Word":
        letters = tuple(letters)
        return cls(letters, evaluate(letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(self.letters) or "1"


@dataclass(frozen=True)
class SpectrumEntry:
    length: float
    orientation: int
    witness: Word


def _reduced_words(length: int) -> List[Tuple[str, ...]]:
    words: List[Tuple[str, ...]] = [()]
    for _ in range(length):
        words = [w + (x,) for w in words for x in LETTERS if not w or INVERSE_LETTER[w[-1]] != x]
    return words


def _record(found: Dict[Tuple[float, int], SpectrumEntry], letters: Tuple[str, ...], g: Isometry) -> None:
    report = classify(g)
    if report.kind == Kind.ELLIPTIC:
        raise ConstructionMismatch(f"word {''.join(letters)}", "elliptic", "torsion-free group")
    if report.kind != Kind.LOXODROMIC:
        return
    key = (round(report.translation_length, 9), report.orientation)
    current = found.get(key)
    if current is None or (len(letters), letters) < (len(current.witness), current.witness.letters):
        found[key] = SpectrumEntry(report.translation_length, report.orientation, Word(letters, g))


def _explore(
    prefix: Tuple[str, ...],
    depth: int,
    table: Dict[str, Isometry],
    max_entry: float,
    limits: LimitConfig,
) -> Tuple[Dict[Tuple[float, int], SpectrumEntry], int]:
    """Depth-first search below one prefix; returns the loxodromic classes met and the word count."""
    budget = ResourceBudget(limits, what="words")
    found: Dict[Tuple[float, int], SpectrumEntry] = {}
    stack = [(prefix, evaluate(prefix, table))]
    while stack:
        letters, g = stack.pop()
        budget.consume()
        _record(found, letters, g)
        if len(letters) == depth:
            continue
        if max(abs(g.a), abs(g.b), abs(g.c), abs(g.d)) > max_entry:
            continue
        for x in LETTERS:
            if INVERSE_LETTER[letters[-1]] != x:
                stack.append((letters + (x,), compose(g, table[x])))
    return found, budget.used


def _explore_in_worker(
    prefix: Tuple[str, ...],
    depth: int,
    table: Dict[str, Isometry],
    max_entry: float,
    limits: LimitConfig,
    tolerance: Tolerance,
) -> Tuple[Dict[Tuple[float, int], SpectrumEntry], int]:
    # worker processes start from the default tolerance
    with tolerance_context(atol=tolerance.atol, strict=tolerance.strict):
        return _explore(prefix, depth, table, max_entry, limits)


def _merge(target: Dict[Tuple[float, int], SpectrumEntry], source: Dict[Tuple[float, int], SpectrumEntry]) -> None:
    for key, entry in source.items():
        current = target.get(key)
        if current is None or (len(entry.witness), entry.witness.letters) < (len(current.witness), current.witness.letters):
            target[key] = entry


def _collect(
    found: Dict[Tuple[float, int], SpectrumEntry],
    results: Iterable[Tuple[Dict[Tuple[float, int], SpectrumEntry], int]],
    limits: LimitConfig,
) -> int:
    total = 0
    for partial_found, used in results:
        _merge(found, partial_found)
        total += used
        if total > limits.max_items:
            raise ResourceLimit("words", limits.max_items)
    return total


def length_spectrum(
    max_word_length: int = 10,
    max_entry: float = 1e3,
    threads: Optional[int] = None,
    limits: Optional[LimitConfig] = None,
) -> List[SpectrumEntry]:
    """
    Translation lengths of all loxodromic freely reduced words up to a length.

    Lengths are deduplicated by value (rounded to 1e-9) and orientation, each
    with its shortest witness word. With more than one worker, the words below
    each length-3 prefix are explored in a pool of processes; extensions of
    words with an entry above max_entry are pruned.

    Raises:
        ResourceLimit: if max_word_length exceeds the configured cap or the
            word budget is exhausted.
    """
    if max_word_length < 1:
        raise ValueError("max_word_length must be at least 1")
    limits = limits or LimitConfig()
    ResourceBudget(limits).check_word_length(max_word_length)
    table = generator_table()
    split = min(3, max_word_length)

    found: Dict[Tuple[float, int], SpectrumEntry] = {}
    for length in range(1, split):
        for letters in _reduced_words(length):
            _record(found, letters, evaluate(letters, table))

    prefixes = _reduced_words(split)
    workers = resolve_threads(threads)
    explore = partial(
        _explore_in_worker, depth=max_word_length, table=table, max_entry=max_entry, limits=limits, tolerance=get_tolerance(),
    )

    if workers == 1:
        total = _collect(found, map(explore, prefixes), limits)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            total = _collect(found, pool.map(explore, prefixes), limits)

    logger.info("Explored %d words up to length %d with %d workers", total, max_word_length, workers)
    return sorted(found.values(), key=lambda e: (e.length, e.orientation))
