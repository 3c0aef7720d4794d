import pytest

from pluscodes.codes import min_distance
from pluscodes.cssplus import PlusCode, verify_plus
from pluscodes.qstate import SignedCode, verify_orthogonal
from pluscodes.registry import KINDS, PROVENANCES, Registry, RegistryError, golden_listing, parse_entry


def test_registry_loads_every_record(registry):
    assert len(registry) >= 20
    for name in registry.names():
        e = registry[name]
        assert e.kind in KINDS and e.provenance in PROVENANCES
        if e.provenance == "derived":
            assert e.command
        built = e.build()
        if e.kind == "catalog":
            assert built is None


def test_classical_records_have_the_declared_distance(registry):
    for e in registry.of_kind("classical"):
        c = e.build()
        assert (c.n, c.k) == (e.n, e.k), e.name
        if c.k <= 21:
            assert min_distance(c) == e.d, e.name


def test_plus_records_have_the_declared_parameters(registry):
    for e in registry.of_kind("plus"):
        p = e.build()
        assert isinstance(p, PlusCode)
        params = verify_plus(p)
        assert (params.n, params.K) == (e.n, e.K), e.name
        assert min(params.d1, params.d2) == e.d, e.name


def test_signed_records_pass_at_their_distance(registry):
    for e in registry.of_kind("signed"):
        c = e.build()
        assert isinstance(c, SignedCode)
        assert (c.n, c.K) == (e.n, e.K)
        t = (e.d - 1) // 2
        assert verify_orthogonal(c, t=t).passed, e.name


def test_hand_transcribed_records_are_present(registry):
    for name in (
        "laflamme-5-1-3",
        "steane-8-3-3",
        "signed-10-4-3",
        "signed-11-5-3",
        "plus-10-2-3",
        "plus-12-3-3",
        "plus-13-5-3",
        "plus-14-6-3",
        "plus-17-7-3",
        "plus-20-9-3",
        "plus-27-16-3",
    ):
        assert registry[name].provenance == "paper"


def test_record_round_trip(registry):
    for name in registry.names():
        e = registry[name]
        again = parse_entry(e.to_text())
        assert again.to_text() == e.to_text()


def test_golden_listing_shape():
    text = golden_listing("steane-8-3-3")
    assert text.count("|v") == 8
    assert text.count("+|") + text.count("-|") == 8 * 16


def test_bad_records(tmp_path):
    with pytest.raises(RegistryError, match="missing field"):
        parse_entry("name: x\nkind: plus\n")
    with pytest.raises(RegistryError, match="unknown kind"):
        parse_entry("name: x\nkind: magic\nn: 3\nprovenance: paper\n")
    with pytest.raises(RegistryError, match="generating command"):
        parse_entry("name: x\nkind: catalog\nn: 3\nprovenance: derived\n")
    with pytest.raises(RegistryError, match="duplicate block"):
        parse_entry("name: x\nkind: classical\nn: 3\nprovenance: paper\n\n[check]\n111\n\n[check]\n110\n")
    with pytest.raises(RegistryError, match="no \\[check\\]"):
        parse_entry("name: x\nkind: classical\nn: 3\nprovenance: paper\n").matrix("check")
    with pytest.raises(KeyError):
        Registry([])["nothing"]
    (tmp_path / "a.code").write_text("name: a\nkind: catalog\nn: 3\nprovenance: catalog\n")
    (tmp_path / "b.code").write_text("name: a\nkind: catalog\nn: 3\nprovenance: catalog\n")
    with pytest.raises(RegistryError, match="duplicate"):
        Registry.load(tmp_path)


def test_comments_are_ignored():
    e = parse_entry("# header\nname: r3  # trailing\nkind: classical\nn: 3\nprovenance: paper\n\n[check]\n110\n011\n")
    assert e.name == "r3"
    assert e.build().k == 1
