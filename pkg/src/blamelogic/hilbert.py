"""Syntactic engine: axiom schemas, tautology instances, proof checking.

Proofs are numbered lines, each justified as a tautology instance, an axiom
instance, a premise, modus ponens from two earlier lines, or necessitation
of an earlier line.  Necessitation is only legal on lines that do not
depend on any premise, which realizes the split between plain theorems and
derivations from hypotheses in one checker: hypothesis-mode reasoning is
exactly modus ponens over premises and theorems.

Tautology checking reads a formula as a Boolean combination of its modal
atoms (maximal Var/Knows/Blames subformulas) and decides truth under all
assignments with bitmask truth tables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    AtomBudgetExceededError,
    InvalidScriptError,
    ParseError,
    PhiNotPremiseError,
)
from .syntax import (
    Blames,
    Formula,
    Implies,
    Knows,
    Neg,
    TOP,
    atom_list,
    conj,
    disj,
    format_coalition,
    parse_formula,
    poss_knows,
    print_formula,
)

AXIOM_NAMES = (
    "Truth-K",
    "Truth-B",
    "Distributivity",
    "NegativeIntrospection",
    "Monotonicity-K",
    "Monotonicity-B",
    "NoneToBlame",
    "BlamelessnessOfTruth",
    "JointResponsibility",
    "BlameForKnownCause",
    "KnowledgeOfFairness",
)

DEFAULT_ATOM_BUDGET = 20


def build_axiom(name, phi=None, psi=None, c=frozenset(), d=frozenset()) -> Formula:
    """Instantiate an axiom schema; raises ValueError on a bad side condition."""
    c = frozenset(c)
    d = frozenset(d)
    match name:
        case "Truth-K":
            return Implies(Knows(c, phi), phi)
        case "Truth-B":
            return Implies(Blames(c, phi), phi)
        case "Distributivity":
            return Implies(
                Knows(c, Implies(phi, psi)), Implies(Knows(c, phi), Knows(c, psi))
            )
        case "NegativeIntrospection":
            return Implies(Neg(Knows(c, phi)), Knows(c, Neg(Knows(c, phi))))
        case "Monotonicity-K":
            if not c <= d:
                raise ValueError("Monotonicity needs C to be a subset of D")
            return Implies(Knows(c, phi), Knows(d, phi))
        case "Monotonicity-B":
            if not c <= d:
                raise ValueError("Monotonicity needs C to be a subset of D")
            return Implies(Blames(c, phi), Blames(d, phi))
        case "NoneToBlame":
            return Neg(Blames(frozenset(), phi))
        case "BlamelessnessOfTruth":
            return Neg(Blames(c, TOP))
        case "JointResponsibility":
            if c & d:
                raise ValueError("Joint Responsibility needs disjoint coalitions")
            either = disj(phi, psi)
            return Implies(
                conj(poss_knows(c, Blames(c, phi)), poss_knows(d, Blames(d, psi))),
                Implies(either, Blames(c | d, either)),
            )
        case "BlameForKnownCause":
            return Implies(
                Knows(c, Implies(phi, psi)),
                Implies(Blames(c, psi), Implies(phi, Blames(c, phi))),
            )
        case "KnowledgeOfFairness":
            return Implies(Blames(c, phi), Knows(c, Implies(phi, Blames(c, phi))))
    raise ValueError(f"unknown axiom name: {name}")


def match_schema(name: str, f: Formula):
    """Bindings if f instantiates the named schema (side conditions checked)."""
    match name:
        case "Truth-K":
            match f:
                case Implies(Knows(c, phi), rhs) if rhs == phi:
                    return {"C": c, "phi": phi}
        case "Truth-B":
            match f:
                case Implies(Blames(c, phi), rhs) if rhs == phi:
                    return {"C": c, "phi": phi}
        case "Distributivity":
            match f:
                case Implies(
                    Knows(c, Implies(phi, psi)),
                    Implies(Knows(c2, phi2), Knows(c3, psi2)),
                ) if c == c2 == c3 and phi == phi2 and psi == psi2:
                    return {"C": c, "phi": phi, "psi": psi}
        case "NegativeIntrospection":
            match f:
                case Implies(
                    Neg(Knows(c, phi)), Knows(c2, Neg(Knows(c3, phi2)))
                ) if c == c2 == c3 and phi == phi2:
                    return {"C": c, "phi": phi}
        case "Monotonicity-K":
            match f:
                case Implies(Knows(c, phi), Knows(d, phi2)) if phi == phi2 and c <= d:
                    return {"C": c, "D": d, "phi": phi}
        case "Monotonicity-B":
            match f:
                case Implies(Blames(c, phi), Blames(d, phi2)) if phi == phi2 and c <= d:
                    return {"C": c, "D": d, "phi": phi}
        case "NoneToBlame":
            match f:
                case Neg(Blames(c, phi)) if not c:
                    return {"phi": phi}
        case "BlamelessnessOfTruth":
            match f:
                case Neg(Blames(c, top)) if top == TOP:
                    return {"C": c}
        case "JointResponsibility":
            match f:
                case Implies(
                    Neg(
                        Implies(
                            Neg(Knows(c, Neg(Blames(c2, phi)))),
                            Neg(Neg(Knows(d, Neg(Blames(d2, psi))))),
                        )
                    ),
                    Implies(
                        Implies(Neg(phi2), psi2),
                        Blames(u, Implies(Neg(phi3), psi3)),
                    ),
                ) if (
                    c == c2
                    and d == d2
                    and phi == phi2 == phi3
                    and psi == psi2 == psi3
                    and not (c & d)
                    and u == c | d
                ):
                    return {"C": c, "D": d, "phi": phi, "psi": psi}
        case "BlameForKnownCause":
            match f:
                case Implies(
                    Knows(c, Implies(phi, psi)),
                    Implies(Blames(c2, psi2), Implies(phi2, Blames(c3, phi3))),
                ) if c == c2 == c3 and phi == phi2 == phi3 and psi == psi2:
                    return {"C": c, "phi": phi, "psi": psi}
        case "KnowledgeOfFairness":
            match f:
                case Implies(
                    Blames(c, phi), Knows(c2, Implies(phi2, Blames(c3, phi3)))
                ) if c == c2 == c3 and phi == phi2 == phi3:
                    return {"C": c, "phi": phi}
        case _:
            raise ValueError(f"unknown axiom name: {name}")
    return None


def match_axiom(f: Formula):
    """First schema (in AXIOM_NAMES order) that f instantiates, with bindings."""
    for name in AXIOM_NAMES:
        bindings = match_schema(name, f)
        if bindings is not None:
            return name, bindings
    return None


def is_tautology_instance(f: Formula, max_atoms: int = DEFAULT_ATOM_BUDGET) -> bool:
    """True iff f is true under every assignment to its modal atoms."""
    atoms = atom_list(f)
    n = len(atoms)
    if n > max_atoms:
        raise AtomBudgetExceededError(
            f"{n} modal atoms exceeds the budget of {max_atoms}"
        )
    rows = 1 << n
    full = (1 << rows) - 1

    # Truth-table bitmask per atom: atom i alternates in runs of 2^i rows.
    masks = [0] * n
    width = 1
    for i in range(n):
        for j in range(i):
            masks[j] |= masks[j] << width
        masks[i] = ((1 << width) - 1) << width
        width <<= 1
    env = dict(zip(atoms, masks))

    memo = {}

    def table(node):
        key = id(node)
        if key in memo:
            return memo[key]
        if node in env:
            value = env[node]
        else:
            match node:
                case Neg(inner):
                    value = full & ~table(inner)
                case Implies(lhs, rhs):
                    value = full & (~table(lhs) | table(rhs))
                case _:
                    raise TypeError(f"not a formula node: {node!r}")
        memo[key] = value
        return value

    return table(f) == full


# ---------------------------------------------------------------------------
# Proof scripts


@dataclass(frozen=True)
class Taut:
    pass


@dataclass(frozen=True)
class Axiom:
    name: str


@dataclass(frozen=True)
class Premise:
    pass


@dataclass(frozen=True)
class MP:
    i: int
    j: int


@dataclass(frozen=True)
class Nec:
    i: int
    coalition: frozenset


@dataclass(frozen=True)
class ProofLine:
    index: int
    formula: Formula
    justification: object


@dataclass(frozen=True)
class ProofScript:
    premises: tuple
    lines: tuple
    goal: Formula


@dataclass(frozen=True)
class CheckReport:
    valid: bool
    error_line: int = None
    reason: str = None
    depends_on_premise: tuple = ()


def check_proof(script: ProofScript, max_atoms: int = DEFAULT_ATOM_BUDGET) -> CheckReport:
    """Validate every line; reports the first invalid line and why.

    A line depends on a premise iff it is a premise or any line it
    references does; necessitation is rejected on premise-dependent lines.
    """
    depends = []

    def invalid(k, reason):
        return CheckReport(False, k, reason, tuple(depends))

    if not script.lines:
        return invalid(0, "script has no lines")

    for k, line in enumerate(script.lines, start=1):
        if line.index != k:
            return invalid(k, f"line numbering must be consecutive (got {line.index})")
        match line.justification:
            case Taut():
                if not is_tautology_instance(line.formula, max_atoms):
                    return invalid(k, "not a tautology instance")
                dep = False
            case Axiom(name):
                if name not in AXIOM_NAMES:
                    return invalid(k, f"unknown axiom name: {name}")
                if match_schema(name, line.formula) is None:
                    return invalid(k, f"not an instance of {name}")
                dep = False
            case Premise():
                if line.formula not in script.premises:
                    return invalid(k, "formula is not among the premises")
                dep = True
            case MP(i, j):
                if not (1 <= i < k and 1 <= j < k):
                    return invalid(k, "modus ponens must reference earlier lines")
                wanted = Implies(script.lines[i - 1].formula, line.formula)
                if script.lines[j - 1].formula != wanted:
                    return invalid(
                        k, f"line {j} is not (line {i} -> line {k})"
                    )
                dep = depends[i - 1] or depends[j - 1]
            case Nec(i, c):
                if not 1 <= i < k:
                    return invalid(k, "necessitation must reference an earlier line")
                if line.formula != Knows(c, script.lines[i - 1].formula):
                    return invalid(
                        k, f"formula is not K{format_coalition(c)} of line {i}"
                    )
                if depends[i - 1]:
                    return invalid(
                        k, "necessitation applied to a premise-dependent line"
                    )
                dep = False
            case other:
                return invalid(k, f"unknown justification: {other!r}")
        depends.append(dep)

    if script.lines[-1].formula != script.goal:
        return invalid(len(script.lines), "last line does not conclude the goal")
    return CheckReport(True, depends_on_premise=tuple(depends))


def deduction_transform(script: ProofScript, phi: Formula) -> ProofScript:
    """Discharge the premise phi, rebuilding the proof to conclude phi -> goal.

    Works line by line: premise-independent lines are kept and weakened
    with the tautology f -> (phi -> f); the phi line becomes the tautology
    phi -> phi; other premises are weakened the same way; modus ponens
    steps are replayed through the distribution tautology
    (phi -> a) -> ((phi -> (a -> b)) -> (phi -> b)).  Output length is at
    most three times the input length.
    """
    report = check_proof(script)
    if not report.valid:
        raise InvalidScriptError(
            f"input script invalid at line {report.error_line}: {report.reason}"
        )
    if phi not in script.premises:
        raise PhiNotPremiseError(f"not a premise: {print_formula(phi)}")

    out = []
    imp_of = {}  # input line index -> output index proving (phi -> that formula)
    kept_of = {}  # input line index -> output index of its kept copy

    def emit(formula, justification):
        out.append(ProofLine(len(out) + 1, formula, justification))
        return len(out)

    for k, line in enumerate(script.lines, start=1):
        psi = line.formula
        target = Implies(phi, psi)
        if not report.depends_on_premise[k - 1]:
            match line.justification:
                case MP(i, j):
                    kept_just = MP(kept_of[i], kept_of[j])
                case Nec(i, c):
                    kept_just = Nec(kept_of[i], c)
                case other:
                    kept_just = other
            kept = emit(psi, kept_just)
            kept_of[k] = kept
            weaken = emit(Implies(psi, target), Taut())
            imp_of[k] = emit(target, MP(kept, weaken))
        elif isinstance(line.justification, Premise) and psi == phi:
            imp_of[k] = emit(Implies(phi, phi), Taut())
        elif isinstance(line.justification, Premise):
            restated = emit(psi, Premise())
            weaken = emit(Implies(psi, target), Taut())
            imp_of[k] = emit(target, MP(restated, weaken))
        else:
            mp = line.justification
            assert isinstance(mp, MP), "premise-dependent lines are premises or MP"
            a = imp_of[mp.i]
            b = imp_of[mp.j]
            dist = emit(
                Implies(out[a - 1].formula, Implies(out[b - 1].formula, target)),
                Taut(),
            )
            step = emit(Implies(out[b - 1].formula, target), MP(a, dist))
            imp_of[k] = emit(target, MP(b, step))

    premises = tuple(p for p in script.premises if p != phi)
    return ProofScript(premises, tuple(out), Implies(phi, script.goal))


# ---------------------------------------------------------------------------
# Proof file format

_LINE_RE = re.compile(r"^(\d+)\.\s*(.*)$")
_COAL_RE = re.compile(r"^\{\s*([A-Za-z][A-Za-z0-9_]*(\s*,\s*[A-Za-z][A-Za-z0-9_]*)*)?\s*\}$")


def _parse_coalition_literal(text: str) -> frozenset:
    m = _COAL_RE.match(text.strip())
    if not m:
        raise ParseError(f"bad coalition literal: {text!r}")
    body = m.group(1)
    if not body:
        return frozenset()
    return frozenset(name.strip() for name in body.split(","))


def _parse_justification(text: str):
    text = text.strip()
    if text == "taut":
        return Taut()
    if text == "premise":
        return Premise()
    if text.startswith("axiom:"):
        name = text[len("axiom:") :].strip()
        if name not in AXIOM_NAMES:
            raise ParseError(f"unknown axiom name: {name!r}")
        return Axiom(name)
    parts = text.split(None, 2)
    if parts and parts[0] == "mp" and len(parts) == 3:
        try:
            return MP(int(parts[1]), int(parts[2]))
        except ValueError:
            raise ParseError(f"bad modus ponens reference: {text!r}") from None
    if parts and parts[0] == "nec" and len(parts) == 3:
        try:
            i = int(parts[1])
        except ValueError:
            raise ParseError(f"bad necessitation reference: {text!r}") from None
        return Nec(i, _parse_coalition_literal(parts[2]))
    raise ParseError(f"bad justification: {text!r}")


def parse_proof(text: str) -> ProofScript:
    """Parse the line-based proof format.

    Layout: an optional `premises:` line, a `goal:` line, then numbered
    lines `N. <formula> ; <justification>`.  `#` starts a comment.
    """
    premises = ()
    goal = None
    lines = []
    for raw in text.splitlines():
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if stripped.startswith("premises:"):
            body = stripped[len("premises:") :].strip()
            if body:
                premises = tuple(parse_formula(p) for p in body.split(";"))
            continue
        if stripped.startswith("goal:"):
            goal = parse_formula(stripped[len("goal:") :])
            continue
        m = _LINE_RE.match(stripped)
        if not m:
            raise ParseError(f"bad proof line: {stripped!r}")
        body = m.group(2)
        if ";" not in body:
            raise ParseError(f"missing justification on line {m.group(1)}")
        formula_text, just_text = body.rsplit(";", 1)
        lines.append(
            ProofLine(
                int(m.group(1)),
                parse_formula(formula_text),
                _parse_justification(just_text),
            )
        )
    if goal is None:
        raise ParseError("proof has no goal: line")
    return ProofScript(premises, tuple(lines), goal)


def format_justification(j) -> str:
    match j:
        case Taut():
            return "taut"
        case Premise():
            return "premise"
        case Axiom(name):
            return f"axiom:{name}"
        case MP(i, jj):
            return f"mp {i} {jj}"
        case Nec(i, c):
            return f"nec {i} {format_coalition(c)}"
    raise TypeError(f"unknown justification: {j!r}")


def format_proof(script: ProofScript) -> str:
    """Serialize a script in the parse_proof format."""
    out = []
    if script.premises:
        out.append("premises: " + " ; ".join(print_formula(p) for p in script.premises))
    out.append("goal: " + print_formula(script.goal))
    for line in script.lines:
        out.append(
            f"{line.index}. {print_formula(line.formula)} ; "
            f"{format_justification(line.justification)}"
        )
    return "\n".join(out) + "\n"


def parse_proof_file(path) -> ProofScript:
    with open(path, encoding="utf-8") as fh:
        return parse_proof(fh.read())
