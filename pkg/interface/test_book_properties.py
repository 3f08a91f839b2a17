"""
Kernel properties over everything the bundled books record

A defined abstraction is reopened by putting its parameters back in the
next move, which is where define checked its definiens.
"""

from contextlib import contextmanager

import pytest

from kernel.terms import App, AType, EntArg, EType, Lambda, World, deent, map_namespaces
from syntax.tokenizer import tokenize

ALL_BOOKS = ["rewriting", "implicit", "russell", "logic"]

# dotted parameters do not survive the tokenizer
EXPLICIT_BOOKS = ["rewriting", "russell", "logic"]


@pytest.fixture
def run(inspector, tmp_path):
    def run_book(name):
        assert inspector.read_file(name, str(tmp_path / f"{name}_log")), f"{name} stopped early"
        return inspector
    return run_book


def abstractions(session):
    return [entry for entry in session.moves[-1].entries if isinstance(entry.sort, AType)]


def definitions(session):
    """(name, frame) of every defined abstraction in move 0"""
    return [(entry.arg.name, entry.sort.frame) for entry in abstractions(session) if entry.age == 0]


@contextmanager
def reopened(session, frame: World):
    """Yield the definiens and its recorded sort with the parameters in scope"""
    entries = frame.entries
    if len(entries) > 1:
        # recorded parameters carry tag 1
        entries = map_namespaces(frame, lambda ns: 0 if ns == 1 else ns).entries
    last = entries[-1]
    with session.next_move_replaced(World(tuple(entries[:-1]))):
        yield deent(last.arg), last.sort.esort


def has_lambda(term) -> bool:
    match term:
        case Lambda():
            return True
        case EntArg(entity):
            return has_lambda(entity)
        case App(_, _, args):
            return any(has_lambda(arg) for arg in args)
    return False


@pytest.mark.parametrize("book", ALL_BOOKS)
def test_expansion_and_rewriting_preserve_sorts(run, book):
    inspector = run(book)
    checker = inspector.checker
    for name, frame in definitions(inspector.session):
        with reopened(inspector.session, frame) as (body, recorded):
            for term in (body, checker.expand(body), checker.rewriter.rewrite_once(body)):
                computed = checker.entity_type(term)
                assert checker.equal_types(False, EType(computed), EType(recorded)), name


@pytest.mark.parametrize("book", ALL_BOOKS)
def test_definientia_are_rewrite_normal(run, book):
    """Bodies are stored fully rewritten, so rewriting again changes nothing"""
    inspector = run(book)
    rewriter = inspector.checker.rewriter
    for name, frame in definitions(inspector.session):
        with reopened(inspector.session, frame) as (body, _):
            assert rewriter.full_rewrite(body) == body, name


def test_rewrite_steps_preserve_sorts(run):
    """Stored bodies are already normal; a left-nested sum is not"""
    inspector = run("rewriting")
    checker = inspector.checker
    term, rest = inspector.parser.entity(tokenize("((m + n) + p) + q"))
    assert rest == []

    step = checker.rewriter.rewrite_once(term)
    normal = checker.rewriter.full_rewrite(term)

    assert step != term
    assert normal == inspector.parser.entity(tokenize("m + (n + (p + q))"))[0]
    sort = EType(checker.entity_type(term))
    for rewritten in (step, normal):
        assert checker.equal_types(False, EType(checker.entity_type(rewritten)), sort)


@pytest.mark.parametrize("book", EXPLICIT_BOOKS)
def test_printed_definientia_parse_back(run, book):
    inspector = run(book)
    checked = 0
    for name, frame in definitions(inspector.session):
        with reopened(inspector.session, frame) as (body, _):
            if has_lambda(body):
                continue
            text = inspector.render.entity(body)
            assert inspector.parser.entity(tokenize(text)) == (body, []), text
            checked += 1
    assert checked > 0


@pytest.mark.parametrize("book", ALL_BOOKS)
def test_renaming_twice_gives_alpha_equal_frames(run, book):
    inspector = run(book)
    checker = inspector.checker
    for entry in abstractions(inspector.session):
        frame = entry.sort.frame
        twice = checker.rename_namespace(checker.rename_namespace(frame))
        assert checker.equal_types(True, AType(twice), AType(frame)), entry.arg.name
