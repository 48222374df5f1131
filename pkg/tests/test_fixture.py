from netrisk.fixture import COUNTRIES, PEAK_INDEX, PERIODS, generate
from netrisk.ingest import parse_exposure_csv


def test_shipped_fixture_matches_generator(fixture_files):
    for name, text in zip(("exposures", "risk_inputs", "transitions"), generate()):
        assert fixture_files[name].read_text(encoding="utf-8") == text


def test_fixture_dimensions():
    assert len(COUNTRIES) == 20 and len(set(COUNTRIES)) == 20
    assert len(PERIODS) == 25
    assert PERIODS[0] == "2005Q1" and PERIODS[-1] == "2011Q1"
    assert PERIODS[PEAK_INDEX] == "2010Q2"


def test_risk_file_line_count(fixture_files):
    # header + one row per (period, country)
    assert len(fixture_files["risk_inputs"].read_text().splitlines()) == 1 + 25 * 20


def test_fixture_keeps_zero_claim_rows(fixture_files):
    recs = parse_exposure_csv(fixture_files["exposures"].read_text())
    assert any(r.claim == 0 for r in recs)


def test_connectivity_rises_2005_to_2009(fixture_panel):
    from netrisk.netgraph import build_network, density

    assert density(build_network(fixture_panel, "2009Q4")) > density(build_network(fixture_panel, "2005Q1"))
