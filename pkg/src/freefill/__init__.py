"""Whitehead automorphisms, the generic set TS' and filling certificates in free groups."""

from .automorphisms import (
    EndoByImages,
    TypeIAut,
    TypeIIAut,
    apply,
    enumerate_type1,
    enumerate_type2,
    whitehead_graph,
    whitehead_minimize,
)
from .genericity import epsilon_bound, in_L_epsilon, in_TS, in_TS_prime
from .splittings import SplittingSpec, enumerate_small_splittings, find_nonfilling_witness, stabilizer_witnesses
from .stallings import contains, conjugate_into, stallings_graph
from .words import Alphabet, cyclic_reduce, free_reduce, inverse, is_proper_power, random_reduced_word

__version__ = "0.1.0"
