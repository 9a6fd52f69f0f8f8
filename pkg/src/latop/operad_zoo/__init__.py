"""Concrete operads and a registry keyed by the short tags used on the command line."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..operad_core import Operad
from . import inversions, multi_index, partitions, permutations, polygons, tamari, walks, words


@dataclass(frozen=True)
class Entry:
    factory: Callable[[], Operad]
    nmax: int  # arity bound used by the desk profile
    lattice_mode: str = "full"  # compatibility mode expected to pass, or "" for none
    note: str = ""


REGISTRY: dict[str, Entry] = {
    "mz": Entry(lambda: multi_index.mz(multi_index.box_window(-1, 1)), 4, "separate", "window [-1,1]^n"),
    "cz": Entry(lambda: multi_index.cz(multi_index.int_window(-2, 2)), 5, "separate", "window [-2,2]"),
    "cz2": Entry(lambda: multi_index.cz_power(2, multi_index.cz_power_window(2, -1, 1)), 4, "separate"),
    "tamari": Entry(tamari.tamari, 6, "full"),
    "perm": Entry(permutations.perm, 4, ""),
    "part": Entry(lambda: partitions.part(3), 5, "full", "largest part <= 3"),
    "part'": Entry(lambda: partitions.part(3, conjugate_notation=True), 5, "full", "largest part <= 3"),
    "part_d": Entry(lambda: partitions.part_d(2), 5, "full", "gaps in 1..2"),
    "inv": Entry(inversions.inversion_operad, 6, "separate"),
    "subset": Entry(words.subsets, 4, "separate"),
    "subset-diamond": Entry(lambda: words.subsets(absorbing=True), 4, ""),
    "comp": Entry(words.comp, 5, "full"),
    "composition": Entry(lambda: words.compositions_operad(3), 5, "full", "parts <= 3"),
    "t": Entry(words.ternary, 4, ""),
    "tv": Entry(words.ternary_dual, 4, ""),
    "comp_b": Entry(words.comp_b, 5, "separate"),
    "comp_bv": Entry(words.comp_b_dual, 5, "separate"),
    "comp_d": Entry(words.comp_d, 5, "separate"),
    "colored": Entry(words.colored_operad, 4, "separate"),
    "pt": Entry(polygons.subdivision_operad, 5, "separate"),
    "walk": Entry(walks.walk_operad, 4, "", "Delannoy steps E, N, D"),
    "ne": Entry(lambda: walks.walk_operad(walks.NE, "ne"), 5, "", "steps E, N"),
}


def get(tag: str) -> Operad:
    try:
        return REGISTRY[tag].factory()
    except KeyError:
        raise KeyError(f"unknown operad {tag!r}; known: {', '.join(sorted(REGISTRY))}") from None


__all__ = ["REGISTRY", "Entry", "get", "inversions", "multi_index", "partitions", "permutations",
           "polygons", "tamari", "walks", "words"]
