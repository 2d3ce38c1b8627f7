"""Two-sorted intuitionistic arithmetic: syntax, evaluation, decidable
fragments, axiom schemata, system descriptors and the rec and lambda
elimination translations."""

from . import decidable, errors, generators, kernel, schemas, suites, syntax, translations
from .decidable import (
    DecidabilityClass,
    CharTerm,
    cfd_witness,
    char_term,
    choice_witness,
    classify,
    is_decidable,
    least_witness,
    truth,
)
from .kernel import Environment, Assignment, eval_functor, eval_term
from .schemas import SchemaId, get_system, instantiate, match
from .syntax import parse, parse_formula, parse_functor, parse_term, to_text
from .translations import check_lambda_equiv, check_rec_equiv, lambda_eliminate, rec_eliminate

__version__ = "0.1.0"
__all__ = [name for name in dir() if not name.startswith("_")]
