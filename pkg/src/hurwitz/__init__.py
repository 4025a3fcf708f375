"""Realizability of almost-regular ramification data in genus 0 and 1."""

__version__ = "0.1.0"

from .ramcore import (
    FamilySpec, GrammarError, InvalidDegree, NotRamificationData, Partition, RamData,
    UnsupportedBase, enumerate_families, family_genus, genus, member, parse_family,
    parse_ramdata, valid_degrees,
)
from .perms import Constellation, Perm, cycle_type, involution_product_profile, verify
from .search import ProvenUnsat, Unknown, Witness, check_nonexistence, realize
from .dessin import Dessin, canonical_form, export_dot, from_constellation, ram_type_of
from .tiling import LatticeBasis, TorusTiling, is_regular_spherical, max_disk_radius, tile_torus
from .transform import BaseMap, add_edges, compose, merge_families, split_2222
from .stability import eval_word, hamming, is_delta_solution, quasi_local_rate

__all__ = [
    "FamilySpec", "GrammarError", "InvalidDegree", "NotRamificationData", "Partition", "RamData",
    "UnsupportedBase", "enumerate_families", "family_genus", "genus", "member", "parse_family",
    "parse_ramdata", "valid_degrees", "Constellation", "Perm", "cycle_type",
    "involution_product_profile", "verify", "ProvenUnsat", "Unknown", "Witness",
    "check_nonexistence", "realize", "Dessin", "canonical_form", "export_dot",
    "from_constellation", "ram_type_of", "LatticeBasis", "TorusTiling", "is_regular_spherical",
    "max_disk_radius", "tile_torus", "BaseMap", "add_edges", "compose", "merge_families",
    "split_2222", "eval_word", "hamming", "is_delta_solution", "quasi_local_rate",
]
