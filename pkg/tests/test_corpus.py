import pytest

from starlab.corpus import FAMILIES, ConfigError, CorpusConfig, corpus_texts, generate_corpus, load_corpus_file, ring_order
from starlab.rings import build_ring, verify_star_ring_axioms
from starlab.spectext import parse_ring_spec


def test_default_corpus_is_deterministic():
    a, b = generate_corpus(), generate_corpus()
    assert a == b
    assert len(a) == len(set(a))
    assert "Z(6)" in corpus_texts(a) and "M(2,Z(6))" in corpus_texts(a)


def test_seed_changes_only_random_part():
    a = corpus_texts(generate_corpus(CorpusConfig(seed=0)))
    b = corpus_texts(generate_corpus(CorpusConfig(seed=1)))
    fixed = corpus_texts(generate_corpus(CorpusConfig(families=tuple(f for f in FAMILIES if f != "random"))))
    assert a[:len(fixed)] == fixed == b[:len(fixed)]


def test_max_order_filter():
    small = generate_corpus(CorpusConfig(max_order=64))
    assert small and all(ring_order(e) <= 64 for e in small)
    assert "M(2,Z(6))" not in corpus_texts(small)


def test_family_selection():
    only = corpus_texts(generate_corpus(CorpusConfig(families=("zmod",))))
    assert only == [f"Z({n})" for n in range(2, 17)]


@pytest.mark.parametrize("kw", [{"families": ("zmod", "nope")}, {"max_order": 0}, {"random_extras": -1}])
def test_bad_config(kw):
    with pytest.raises(ConfigError):
        CorpusConfig(**kw)


def test_small_corpus_members_are_star_rings():
    for e in generate_corpus(CorpusConfig(max_order=32)):
        rep = verify_star_ring_axioms(build_ring(e))
        assert rep.passed, corpus_texts([e])


def test_corpus_file(tmp_path):
    f = tmp_path / "rings.txt"
    f.write_text("# comment\nZ(6)\n\nM(2,Z(2))\n")
    got = load_corpus_file(f)
    assert got == [parse_ring_spec("Z(6)"), parse_ring_spec("M(2,Z(2))")]
