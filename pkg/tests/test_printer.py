from psysafe.lexer import tokenize
from psysafe.loader import load_sources
from psysafe.model import resolve
from psysafe.parser import parse
from psysafe.printer import print_canonical

from tests.modelgen import random_model


def round_trip(model):
    text = print_canonical(model)
    lex = tokenize(text, "canonical.psy")
    assert not lex.diagnostics, lex.diagnostics
    raw, diags = parse(lex.tokens, "canonical.psy")
    assert not diags, diags
    return resolve(raw)


def test_corpus_round_trips(corpus_model):
    assert round_trip(corpus_model) == corpus_model


def test_canonical_print_is_idempotent(corpus_model):
    once = print_canonical(corpus_model)
    assert print_canonical(round_trip(corpus_model)) == once


def test_empty_model_prints_only_the_header():
    model, _ = load_sources([("t.psy", 'analysis "empty" { sae_level = 5 }')])
    text = print_canonical(model)
    assert text == 'analysis "empty" {\n  sae_level = 5\n}\n'


def test_quotes_and_backslashes_escape_and_round_trip():
    source = ('analysis "with \\"quote\\" and \\\\ slash" '
              '{ sae_level = 2 }\n'
              'stakeholder SH1 "name with \\"air quotes\\""')
    model, _ = load_sources([("t.psy", source)])
    assert model.stakeholders[0].name == 'name with "air quotes"'
    again = round_trip(model)
    assert again == model
    assert '\\"air quotes\\"' in print_canonical(model)


def test_declarations_sorted_by_kind_then_id():
    source = ('analysis "t" { sae_level = 3 }\n'
              'loss L2 "b" violates ST1\n'
              'stakeholder SH1 "s"\n'
              'loss L1 "a" violates ST1\n'
              'stake ST1 "st" of SH1\n')
    model, _ = load_sources([("t.psy", source)])
    text = print_canonical(model)
    order = [line.split()[0:2] for line in text.splitlines()
             if line and not line.startswith(("analysis", "  ", "}"))]
    assert order == [["stakeholder", "SH1"], ["stake", "ST1"],
                     ["loss", "L1"], ["loss", "L2"]]


def test_500_generated_models_round_trip():
    for seed in range(500):
        model = random_model(seed)
        assert round_trip(model) == model, f"seed {seed}"
