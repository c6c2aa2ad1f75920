"""Truth of formulas at plays of a game, and the derived bulk checks.

A formula is evaluated at a play (state, complete action profile, outcome):

  - a variable holds when the valuation puts the play's index in its set;
  - negation and implication are classical;
  - K{C}f holds when f holds at every play whose initial state the
    coalition C cannot distinguish from the current one;
  - B{C}f holds when f holds here and some single action choice for C
    falsifies f at every play that is C-indistinguishable from here and
    agrees with that choice on C's members.

The blame clause enumerates |actions|^|C| strategies; evaluation refuses
with BudgetExceededError when that count exceeds the cap (default 10^6).
Evaluation is pure; an internal per-call cache keyed by (subformula, play
index) keeps nested modalities cheap and behaves as if absent.
"""

from __future__ import annotations

from itertools import product

from .errors import BudgetExceededError, PlayNotInGameError, UnknownAgentError
from .game import Game, Play, Strategy, indistinguishable
from .syntax import Blames, Formula, Implies, Knows, Neg, Var, formula_agents

DEFAULT_STRATEGY_CAP = 10**6


def _check_agents(game: Game, formula: Formula):
    unknown = formula_agents(formula) - set(game.agents)
    if unknown:
        raise UnknownAgentError(f"unknown agent: {sorted(unknown)[0]}")


class _Context:
    """Per-evaluation scratch state: memo table and coalition class maps."""

    def __init__(self, game: Game, cap: int):
        self.game = game
        self.cap = cap
        self.memo = {}
        self._classes = {}
        self._members = {}

    def state_class(self, coalition):
        """Map each state to a class id under the coalition's joint relation."""
        classes = self._classes.get(coalition)
        if classes is None:
            classes = {}
            reps = []
            for s in self.game.states:
                for r in reps:
                    if indistinguishable(self.game, coalition, s, r):
                        classes[s] = classes[r]
                        break
                else:
                    classes[s] = len(reps)
                    reps.append(s)
            self._classes[coalition] = classes
        return classes

    def related_plays(self, coalition, state):
        """Indices of plays whose initial state is coalition-indistinguishable."""
        members = self._members.get(coalition)
        if members is None:
            classes = self.state_class(coalition)
            members = {}
            for i, play in enumerate(self.game.plays):
                members.setdefault(classes[play.state], []).append(i)
            self._members[coalition] = members
        return members[self.state_class(coalition)[state]]


def _eval(ctx: _Context, idx: int, f: Formula) -> bool:
    key = (id(f), idx)
    if key in ctx.memo:
        return ctx.memo[key]
    game = ctx.game
    match f:
        case Var(name):
            value = idx in game.valuation.get(name, ())
        case Neg(inner):
            value = not _eval(ctx, idx, inner)
        case Implies(lhs, rhs):
            value = (not _eval(ctx, idx, lhs)) or _eval(ctx, idx, rhs)
        case Knows(c, inner):
            value = all(
                _eval(ctx, j, inner)
                for j in ctx.related_plays(c, game.plays[idx].state)
            )
        case Blames(c, inner):
            value = _eval_blame(ctx, idx, c, inner) is not None
        case _:
            raise TypeError(f"not a formula node: {f!r}")
    ctx.memo[key] = value
    return value


def _eval_blame(ctx: _Context, idx: int, coalition, inner):
    """First strategy witnessing the blame clause at play idx, else None."""
    if not _eval(ctx, idx, inner):
        return None
    game = ctx.game
    members = sorted(coalition)
    if len(game.actions) ** len(members) > ctx.cap:
        raise BudgetExceededError(
            f"blame check needs {len(game.actions)}^{len(members)} strategies, "
            f"cap is {ctx.cap}"
        )
    candidates = ctx.related_plays(coalition, game.plays[idx].state)
    for combo in product(game.actions, repeat=len(members)):
        for j in candidates:
            profile = game.plays[j].profile
            if all(profile[a] == act for a, act in zip(members, combo)):
                if _eval(ctx, j, inner):
                    break
        else:
            return dict(zip(members, combo))
    return None


def _locate(game: Game, play: Play) -> int:
    for i, p in enumerate(game.plays):
        if p == play:
            return i
    raise PlayNotInGameError(f"play not in game: {play}")


def evaluate(
    game: Game, play: Play, formula: Formula, strategy_cap: int = DEFAULT_STRATEGY_CAP
) -> bool:
    """Does the formula hold at this play of the game?"""
    _check_agents(game, formula)
    idx = _locate(game, play)
    return _eval(_Context(game, strategy_cap), idx, formula)


def extension(
    game: Game, formula: Formula, strategy_cap: int = DEFAULT_STRATEGY_CAP
) -> frozenset:
    """Indices of exactly the plays at which the formula holds."""
    _check_agents(game, formula)
    ctx = _Context(game, strategy_cap)
    return frozenset(i for i in range(len(game.plays)) if _eval(ctx, i, formula))


def is_valid(
    game: Game, formula: Formula, strategy_cap: int = DEFAULT_STRATEGY_CAP
) -> bool:
    """True iff the formula holds at every play of the game."""
    _check_agents(game, formula)
    ctx = _Context(game, strategy_cap)
    return all(_eval(ctx, i, formula) for i in range(len(game.plays)))


def blame_witness(
    game: Game,
    play: Play,
    coalition,
    formula: Formula,
    strategy_cap: int = DEFAULT_STRATEGY_CAP,
):
    """Lexicographically smallest strategy establishing B{coalition}formula.

    Orders strategies by sorted member name, then by action order as
    declared in the game.  Returns None exactly when the blame modality is
    false at the play.
    """
    _check_agents(game, formula)
    unknown = set(coalition) - set(game.agents)
    if unknown:
        raise UnknownAgentError(f"unknown agent: {sorted(unknown)[0]}")
    idx = _locate(game, play)
    ctx = _Context(game, strategy_cap)
    choice = _eval_blame(ctx, idx, frozenset(coalition), formula)
    if choice is None:
        return None
    return Strategy(frozenset(coalition), choice)


def semantic_entailment(
    game: Game,
    hypotheses,
    formula: Formula,
    strategy_cap: int = DEFAULT_STRATEGY_CAP,
) -> bool:
    """True iff every play satisfying all hypotheses also satisfies formula."""
    for h in hypotheses:
        _check_agents(game, h)
    _check_agents(game, formula)
    ctx = _Context(game, strategy_cap)
    for i in range(len(game.plays)):
        if all(_eval(ctx, i, h) for h in hypotheses) and not _eval(ctx, i, formula):
            return False
    return True
