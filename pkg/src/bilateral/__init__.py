"""Bilateral sequent calculus: proofs, refutations and their soundness audits."""
from .syntax import (
    BOT,
    TOP,
    And,
    Atom,
    CoImp,
    Formula,
    Imp,
    LineType,
    MetaJudgment,
    Or,
    ParseError,
    Sequent,
    Sign,
    parse_formula,
    parse_sequent,
    print_formula,
    print_sequent,
)

__version__ = "0.1.0"
