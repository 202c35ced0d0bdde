"""Exact full-rank probabilities of sparse random matrices over finite fields."""

import json
from fractions import Fraction

from . import _core
from ._core import BudgetExceededError, DegenerateError, Error, field_inv, field_mul, in_row_space, oracle_census, rank

__all__ = [
    "BudgetExceededError",
    "DegenerateError",
    "Error",
    "RationalFunction",
    "bkw_bound",
    "field_inv",
    "field_mul",
    "full_rank_prob",
    "full_rank_prob_at",
    "in_row_space",
    "oracle_census",
    "p_in",
    "rank",
    "rank_distribution",
    "simulate",
]


class RationalFunction:
    """num(p0) / den(p0) with Fraction coefficients in ascending degree."""

    def __init__(self, num, den, text):
        self.num = [Fraction(c) for c in num]
        self.den = [Fraction(c) for c in den]
        self.text = text

    @staticmethod
    def _eval(coeffs, x):
        acc = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    def __call__(self, p0):
        x = Fraction(p0)
        den = self._eval(self.den, x)
        if den == 0:
            raise DegenerateError(f"pole at p0 = {x}")
        return self._eval(self.num, x) / den

    def is_polynomial(self):
        return len(self.den) == 1

    def __repr__(self):
        return f"RationalFunction({self.text!r})"

    def __str__(self):
        return self.text


def _frac(text):
    return Fraction(text)


def full_rank_prob(m, n, q=2, budget=100_000_000, threads=1):
    return RationalFunction(*_core.full_rank_prob(m, n, q, budget, threads))


def full_rank_prob_at(m, n, q=2, p0="1/2", budget=100_000_000):
    return _frac(_core.full_rank_prob_at(m, n, q, str(Fraction(p0)), budget))


def p_in(i, n, q=2, budget=100_000_000):
    return RationalFunction(*_core.p_in(i, n, q, budget))


def rank_distribution(m, n, q=2, p0="1/2", form="nested"):
    return [_frac(v) for v in _core.rank_distribution(m, n, q, str(Fraction(p0)), form)]


def bkw_bound(i, n, q=2, p0="1/2"):
    return _frac(_core.bkw_bound(i, n, q, str(Fraction(p0))))


def simulate(**config):
    return json.loads(_core.simulate(json.dumps(config)))
