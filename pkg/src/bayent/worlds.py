"""Exact probability distributions over valuations and their queries.

All arithmetic is over `fractions.Fraction`; nothing is ever rounded.
A WorldModel assigns a probability to each of the 2^n valuations of its
symbol table; queries (joint, conditional, posterior) are computed by
summing over the satisfying valuations.
"""

from __future__ import annotations

from fractions import Fraction

from .formula import MAX_SYMBOLS, SymbolTable, parse_formula, truth_mask

UNDEFINED = None  # conditional probability with zero-probability condition


class WorldError(Exception):
    """Invalid distribution or world file."""


def premises(*formulas):
    """Normalize formulas into a premise set (duplicates removed)."""
    return frozenset(formulas)


def premise_mask(formulas, table):
    """Bitmask of valuations satisfying every formula in the set."""
    mask = (1 << table.num_valuations) - 1
    for f in formulas:
        mask &= truth_mask(f, table)
    return mask


class WorldModel:
    """Distribution p over the valuations of a symbol table.

    Immutable after validation. Queries are pure, so a shared model may
    be used concurrently without coordination.
    """

    def __init__(self, table, probs):
        if len(table) > MAX_SYMBOLS:
            raise WorldError(
                f"{len(table)} symbols exceeds the enumeration cap of {MAX_SYMBOLS}"
            )
        entries = tuple(Fraction(p) for p in probs)
        if len(entries) != table.num_valuations:
            raise WorldError(
                f"need {table.num_valuations} probabilities, got {len(entries)}"
            )
        for i, p in enumerate(entries):
            if p < 0:
                raise WorldError(f"negative probability {p} at valuation index {i}")
        total = sum(entries)
        if total != 1:
            raise WorldError(f"probabilities sum to {total}, off by {1 - total}")
        self.table = table
        self.probs = entries
        self._mass_cache = {}

    def __repr__(self):
        return f"WorldModel({self.table!r}, {[str(p) for p in self.probs]})"

    def __eq__(self, other):
        return (
            isinstance(other, WorldModel)
            and self.table == other.table
            and self.probs == other.probs
        )

    def p(self, v):
        """Probability of a single valuation."""
        return self.probs[v.index]

    def mass(self, mask):
        """Total probability of the valuations whose index bits are set in mask."""
        cached = self._mass_cache.get(mask)
        if cached is not None:
            return cached
        total = Fraction(0)
        m = mask
        while m:
            low = m & -m
            total += self.probs[low.bit_length() - 1]
            m ^= low
        self._mass_cache[mask] = total
        return total

    def models_of(self, delta):
        """Valuations satisfying every premise (all valuations when empty)."""
        mask = premise_mask(delta, self.table)
        return {self.table.valuation(i) for i in _indices(mask)}

    def prob(self, delta):
        """Joint probability of a premise set; 1 for the empty set."""
        return self.mass(premise_mask(delta, self.table))

    def conditional(self, alpha, delta):
        """p(alpha | delta), or UNDEFINED when the premises have zero mass."""
        dmask = premise_mask(delta, self.table)
        denom = self.mass(dmask)
        if denom == 0:
            return UNDEFINED
        return self.mass(dmask & truth_mask(alpha, self.table)) / denom

    def posterior(self, delta):
        """Updated distribution given the premises, as a WorldModel.

        UNDEFINED when the premises have zero mass.
        """
        dmask = premise_mask(delta, self.table)
        denom = self.mass(dmask)
        if denom == 0:
            return UNDEFINED
        probs = [
            (self.probs[i] / denom if (dmask >> i) & 1 else Fraction(0))
            for i in range(self.table.num_valuations)
        ]
        return WorldModel(self.table, probs)

    def support(self):
        """Valuations with strictly positive probability."""
        return {
            self.table.valuation(i)
            for i, p in enumerate(self.probs)
            if p > 0
        }

    def support_mask(self):
        mask = 0
        for i, p in enumerate(self.probs):
            if p > 0:
                mask |= 1 << i
        return mask


def _indices(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def make_world(table, probs):
    """Validated WorldModel; probabilities may be any Fraction-convertible."""
    return WorldModel(table, probs)


def uniform_world(table):
    n = table.num_valuations
    return WorldModel(table, [Fraction(1, n)] * n)


def parse_rational(text):
    """Exact rational from a 'p/q' or decimal string."""
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise WorldError(f"cannot parse {text!r} as an exact rational: {exc}") from exc


# --- JSON world files --------------------------------------------------
#
# {"symbols": ["a", "b"],
#  "worlds": [{"assignment": {"a": 0, "b": 0}, "prob": "1/2"}, ...]}
#
# Every one of the 2^n assignments must appear exactly once; "prob"
# accepts rational strings "p/q" or decimal strings parsed exactly.


def world_from_dict(data):
    try:
        symbols = data["symbols"]
        rows = data["worlds"]
    except (KeyError, TypeError) as exc:
        raise WorldError(f"world JSON must have 'symbols' and 'worlds': {exc}") from exc
    try:
        table = SymbolTable(symbols)
    except ValueError as exc:
        raise WorldError(str(exc)) from exc
    probs = [None] * table.num_valuations
    for row in rows:
        try:
            v = table.valuation_from_assignment(row["assignment"])
        except (KeyError, TypeError, ValueError) as exc:
            raise WorldError(f"bad world row {row!r}: {exc}") from exc
        if probs[v.index] is not None:
            raise WorldError(f"assignment {row['assignment']} appears twice")
        probs[v.index] = parse_rational(row["prob"])
    missing = [i for i, p in enumerate(probs) if p is None]
    if missing:
        first = table.valuation(missing[0]).assignment()
        raise WorldError(f"missing {len(missing)} assignments, e.g. {first}")
    return WorldModel(table, probs)


def world_to_dict(model):
    return {
        "symbols": list(model.table.symbols),
        "worlds": [
            {
                "assignment": model.table.valuation(i).assignment(),
                "prob": str(model.probs[i]),
            }
            for i in range(model.table.num_valuations)
        ],
    }


def parse_premises(texts, table):
    """Parse a list of formula strings into a premise set."""
    return frozenset(parse_formula(t, table) for t in texts)
