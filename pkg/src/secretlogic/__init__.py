"""Toolkit for a multi-agent logic of knowledge, belief, intention and true secrets."""

from secretlogic.formula import (
    B,
    I,
    K,
    And,
    Bot,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Top,
    Var,
    desugar,
    expand_factive_ignorance,
    expand_secret,
    iterate_box,
    subformulas,
    translate_t,
)
from secretlogic.kripke import KripkeModel, check_frame, evaluate, model_validates
from secretlogic.parser import ParseError, parse_formula, print_formula

__version__ = "0.1.0"
