"""Acceptance suite: one test per criterion, one printed verdict line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the verdict lines.
"""

import json
import time
from dataclasses import replace

from _helpers import naive_evaluate, negate_line, random_premise_script, make_rng
from blamelogic import asset_path
from blamelogic.cli import main as cli_main
from blamelogic.game import dump_game, game_from_document, load_game
from blamelogic.generator import GenParams, derive_seed, gen_formula, gen_game, soundness_sweep
from blamelogic.hilbert import (
    AXIOM_NAMES,
    check_proof,
    deduction_transform,
    parse_proof,
)
from blamelogic.semantics import blame_witness, evaluate, is_valid
from blamelogic.syntax import Blames, Implies, Knows, parse_formula, print_formula

CORPUS = (
    "lemma3.proof",
    "lemma4_inst.proof",
    "lemma5.proof",
    "lemma6_n2.proof",
    "lemma8.proof",
    "lemma9_n2.proof",
)


def verdict(number, ok, detail):
    print(f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {number}: {detail}"


def test_criterion_1_traffic_scenario_fidelity(truck_manual, truck_selfdriving):
    started = time.perf_counter()
    play = truck_manual.plays[3]
    col = parse_formula("col")
    blame = parse_formula("B{c}col")
    ok = (
        evaluate(truck_manual, play, col)
        and not evaluate(truck_manual, play, blame)
        and evaluate(truck_selfdriving, truck_selfdriving.plays[3], blame)
    )
    witness = blame_witness(
        truck_selfdriving, truck_selfdriving.plays[3], {"c"}, col
    )
    ok = ok and witness is not None and witness.choice == {"c": "speed-up"}
    elapsed = time.perf_counter() - started
    ok = ok and elapsed < 1.0
    verdict(1, ok, f"truck scenario matches the worked example in {elapsed:.3f}s")


def test_criterion_2_soundness_sweep():
    started = time.perf_counter()
    report = soundness_sweep(GenParams(seed=2024), trials=1000)
    elapsed = time.perf_counter() - started
    schemas_hit = [name for name in AXIOM_NAMES if report.counts[name] > 0]
    ok = (
        report.trials == 1000
        and not report.violations
        and len(schemas_hit) == 11
        and elapsed < 60.0
    )
    verdict(
        2,
        ok,
        f"1000-trial sweep, {len(schemas_hit)}/11 schemas instantiated, "
        f"{len(report.violations)} violations, {elapsed:.1f}s",
    )


def test_criterion_3_necessitation_preservation():
    failures = 0
    valid_cases = 0
    coalition_pool = {}
    for g_seed in range(200):
        game = gen_game(GenParams(seed=derive_seed(77, g_seed)))
        agents = game.agents
        coalitions = coalition_pool.get(agents)
        if coalitions is None:
            coalitions = [frozenset()]
            for agent in agents:
                coalitions += [c | {agent} for c in coalitions]
            coalition_pool[agents] = coalitions
        formulas = [
            gen_formula(GenParams(seed=derive_seed(78, g_seed, i)), agents)
            for i in range(48)
        ]
        anchor = gen_formula(GenParams(seed=derive_seed(79, g_seed)), agents)
        formulas.append(Implies(anchor, anchor))
        formulas.append(Knows(frozenset(), Implies(anchor, anchor)))
        for f in formulas:
            if is_valid(game, f):
                valid_cases += 1
                for c in coalitions:
                    if not is_valid(game, Knows(c, f)):
                        failures += 1
    ok = failures == 0 and valid_cases > 0
    verdict(
        3,
        ok,
        f"200 games x 50 formulas, {valid_cases} valid cases, {failures} failures",
    )


def test_criterion_4_proof_corpus_and_mutants():
    all_pass = True
    for name in CORPUS:
        script = parse_proof(asset_path(name).read_text())
        if not check_proof(script).valid:
            all_pass = False
    rng = make_rng(44)
    mutants = 0
    mutants_fail = 0
    for name in CORPUS:
        script = parse_proof(asset_path(name).read_text())
        for _ in range(4):
            k = rng.randint(1, len(script.lines))
            mutants += 1
            if not check_proof(negate_line(script, k)).valid:
                mutants_fail += 1
    ok = all_pass and mutants >= 20 and mutants_fail == mutants
    verdict(
        4,
        ok,
        f"{len(CORPUS)} scripts pass, {mutants_fail}/{mutants} mutants fail",
    )


def test_criterion_5_deduction_transform():
    rng = make_rng(31337)
    ok = True
    for _ in range(100):
        script, phi = random_premise_script(rng)
        out = deduction_transform(script, phi)
        report = check_proof(out)
        if not report.valid:
            ok = False
            break
        if out.goal != Implies(phi, script.goal) or out.lines[-1].formula != out.goal:
            ok = False
            break
        if len(out.lines) > 3 * len(script.lines) + 1:
            ok = False
            break
    verdict(5, ok, "100 random premise-mode scripts transform and re-check")


def test_criterion_6_blame_oracle_equivalence():
    params = GenParams(
        num_agents=2, num_states=2, num_actions=2, num_outcomes=2, formula_depth=2
    )
    disagreements = 0
    checked = 0
    for g_seed in range(200):
        game = gen_game(replace(params, seed=derive_seed(6001, g_seed)))
        coalitions = [
            c
            for c in _all_coalitions(game.agents)
            if len(c) <= 2
        ]
        formulas = [
            gen_formula(
                replace(
                    params,
                    seed=derive_seed(6002, g_seed, i),
                    formula_depth=1 if i % 2 else 2,
                ),
                game.agents,
            )
            for i in range(20)
        ]
        for f in formulas:
            for c in coalitions:
                blame = Blames(c, f)
                for play in game.plays:
                    checked += 1
                    if evaluate(game, play, blame) != naive_evaluate(game, play, blame):
                        disagreements += 1
    ok = disagreements == 0 and checked > 0
    verdict(
        6,
        ok,
        f"{checked} blame evaluations against the naive oracle, "
        f"{disagreements} disagreements",
    )


def _all_coalitions(agents):
    out = [frozenset()]
    for agent in agents:
        out += [c | {agent} for c in out]
    return out


def test_criterion_7_countermodel_search(capsys):
    started = time.perf_counter()
    code = cli_main(["search", "--formula", "B{a}p -> K{a}p", "--json"])
    out = capsys.readouterr().out
    elapsed = time.perf_counter() - started
    doc = json.loads(out)
    found_ok = code == 1 and doc["verdict"] == "countermodel"
    game = game_from_document(doc["witness"]["game"])
    play = game.plays[doc["witness"]["play"]]
    found_ok = found_ok and evaluate(game, play, parse_formula("B{a}p & ~K{a}p"))
    found_ok = found_ok and elapsed < 10.0

    code2 = cli_main(["search", "--formula", "K{a}p -> p", "--json"])
    out2 = capsys.readouterr().out
    none_ok = code2 == 0 and json.loads(out2)["verdict"] == "none"
    verdict(
        7,
        found_ok and none_ok,
        f"verified countermodel in {elapsed:.2f}s; sound formula exhausts budget",
    )


def test_criterion_8_round_trips():
    formula_ok = 0
    for seed in range(1000):
        f = gen_formula(
            GenParams(formula_depth=5, num_variables=4, num_agents=3, seed=seed),
            ("a", "b", "c"),
        )
        if parse_formula(print_formula(f)) == f:
            formula_ok += 1
    game_ok = 0
    for seed in range(1000):
        g = gen_game(
            GenParams(
                num_agents=1 + seed % 3,
                num_states=1 + seed % 4,
                num_actions=1 + (seed // 3) % 3,
                num_outcomes=1 + (seed // 2) % 3,
                branching=0.25,
                seed=derive_seed(8080, seed),
            )
        )
        if load_game(dump_game(g)) == g:
            game_ok += 1
    ok = formula_ok == 1000 and game_ok == 1000
    verdict(8, ok, f"{formula_ok}/1000 formulas, {game_ok}/1000 games round-trip")
