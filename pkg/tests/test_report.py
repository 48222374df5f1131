import math
import re

import numpy as np
import pytest

from netrisk.errors import EmptySeries
from netrisk.netgraph import build_network, network_from_adjacency, network_from_weights
from netrisk.report import emit_svg_plot, export_dot, fmt, sri_csv, to_json
from netrisk.riskcore import SriSeries, sri_series

from dot_grammar import DotSyntaxError, parse_dot


def test_fmt_six_significant_digits():
    assert fmt(1 + math.log10(101)) == "3.00432"
    assert fmt(0.0) == fmt(-0.0) == "0"
    assert fmt(1234567.0) == "1.23457e+06"
    assert fmt(64.0) == "64"


def test_dot_single_edge():
    net = network_from_weights(("GB", "US"), [[0, 0], [100.0, 0]], period="2005Q1")
    text = export_dot(net)
    assert "US -> GB" in text
    line = next(ln for ln in text.splitlines() if "->" in ln)
    pw = float(re.search(r'penwidth="([^"]+)"', line).group(1))
    assert pw == pytest.approx(1 + math.log10(101), rel=1e-6)
    assert 'claim="100"' in line
    nodes, edges = parse_dot(text)
    assert nodes == ["GB", "US"] and edges == [("US", "GB")]


def test_dot_empty_network_nodes_only():
    text = export_dot(network_from_adjacency(("AT", "BE", "CH"), np.zeros((3, 3)), period="2005Q1"))
    nodes, edges = parse_dot(text)
    assert nodes == ["AT", "BE", "CH"] and edges == []


def test_dot_fixture_quarter(fixture_panel, fixture_files):
    rows = [ln.split(",") for ln in fixture_files["exposures"].read_text().splitlines()[1:]]
    for period in ("2005Q1", "2009Q4", "2011Q1"):
        expected = sum(1 for r in rows if r[0] == period and float(r[3]) > 0)
        net = build_network(fixture_panel, period)
        nodes, edges = parse_dot(export_dot(net))
        assert len(nodes) == 20
        assert len(edges) == expected == int(net.adjacency.sum())
        assert edges == sorted(edges)


def test_dot_large_claims_stay_valid():
    net = network_from_weights(("GB", "US"), [[0, 2.5e9], [1e-7, 0]], period="2005Q1")
    parse_dot(export_dot(net))


def test_validator_rejects_garbage():
    for bad in ("digraph { A -> }", "graph { A -> B }", "digraph { A [x=] }", "digraph { A"):
        with pytest.raises(DotSyntaxError):
            parse_dot(bad)


def _circles(svg):
    return [(float(x), float(y)) for x, y in re.findall(r'<circle cx="([^"]+)" cy="([^"]+)"', svg)]


def test_svg_single_point():
    svg = emit_svg_plot(SriSeries((("2005Q1", 3.0),)))
    assert len(_circles(svg)) == 1
    assert "Systemic Risk Index" in svg


def test_svg_fixture_series(fixture_panel):
    series = sri_series(fixture_panel)
    svg = emit_svg_plot(series)
    pts = _circles(svg)
    assert len(pts) == 25
    ys = [y for _, y in pts]
    assert ys.index(min(ys)) == series.periods.index(series.argmax) == 21
    # every quarter label drawn when there are at most 26 periods
    assert all(f">{p}</text>" in svg for p in series.periods)


def test_svg_constant_series_is_flat():
    svg = emit_svg_plot(SriSeries(tuple((f"2005Q{k}", 2.0) for k in range(1, 5))))
    poly = re.search(r'<polyline points="([^"]+)"', svg).group(1)
    ys = {p.split(",")[1] for p in poly.split()}
    assert len(ys) == 1


def test_svg_long_series_thins_labels():
    pts = tuple((f"{2000 + k // 4}Q{k % 4 + 1}", float(k)) for k in range(40))
    svg = emit_svg_plot(SriSeries(pts))
    labels = re.findall(r">(\d{4}Q\d)</text>", svg)
    assert labels == [p for p, _ in pts[::4]]


def test_svg_zero_series():
    svg = emit_svg_plot(SriSeries((("2005Q1", 0.0), ("2005Q2", 0.0))))
    assert len(_circles(svg)) == 2


def test_svg_empty():
    with pytest.raises(EmptySeries):
        emit_svg_plot(SriSeries(()))


def test_svg_deterministic(fixture_panel):
    s = sri_series(fixture_panel)
    assert emit_svg_plot(s) == emit_svg_plot(s)


def test_sri_csv_and_json():
    s = SriSeries((("2005Q1", 1 / 3), ("2005Q2", 2.0)))
    assert sri_csv(s) == "period,sri\n2005Q1,0.333333\n2005Q2,2\n"
    assert to_json({"x": 1 / 3}) == '{\n  "x": 0.333333\n}\n'
