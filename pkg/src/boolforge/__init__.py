"""Symbolic Boolean equation solving over finite Boolean algebras."""
from .algebra import Elem, Signature, collapse, to_sop_text
from .enumeration import ParticularSolution, brute_force, enumerate_all, pick, verify_solution
from .errors import BoolforgeError, CapExceeded, InconsistentEquation, ParseError
from .expr import Problem, parse_expr, parse_problem
from .parametric import ParamSolution, contribution_table, solve_independent, solve_shared, verify
from .reduce import problem_map, suppress, suppress_zero_form, unify
from .subsumptive import eliminants, intervals, to_parametric
from .vekm import NaturalMap, atom_counts, build_map, consistency, count_solutions

__version__ = "0.1.0"

__all__ = [
    "BoolforgeError", "CapExceeded", "Elem", "InconsistentEquation", "NaturalMap", "ParamSolution",
    "ParseError", "ParticularSolution", "Problem", "Signature", "atom_counts", "brute_force",
    "build_map", "collapse", "consistency", "contribution_table", "count_solutions", "eliminants",
    "enumerate_all", "intervals", "parse_expr", "parse_problem", "pick", "problem_map",
    "solve_independent", "solve_shared", "suppress", "suppress_zero_form", "to_parametric",
    "to_sop_text", "unify", "verify", "verify_solution",
]
