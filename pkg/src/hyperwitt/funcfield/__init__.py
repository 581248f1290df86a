"""Element-level computations in F_q(t), F_p((s))(t) and characteristic 2."""

from .char2 import Char2Dimension, char2_dimension, char2_represents, char2_solve, coordinates
from .composed import ComposedElement, LexValue, composed_class, lex_value, tower_class
from .poly import Factorization, Poly, factorize, first_places, is_irreducible, poly_sqrt
from .ratfunc import RatFunc, parse_ratfunc
from .squareclass import (
    DistinctClasses,
    NonRigidityWitness,
    Place,
    SquareClassElement,
    certify_represents,
    distinct_classes_witness,
    is_local_square,
    local_class,
    non_rigidity_witness,
    represents,
    square_class,
    support,
    tame_symbol,
    valuation,
)
