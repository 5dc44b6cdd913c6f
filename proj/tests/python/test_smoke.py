"""End-to-end smoke of the python module and the CLI report contract."""

import json
import math
import os
import subprocess

import pytest

import _pstable as ps


def test_exponent_table():
    t = ps.exponent_table(6, 2.0)
    assert t.q2star == pytest.approx(6.0)
    assert t.r1 == pytest.approx(12.0 / 7.0)
    assert t.radially_bounded  # threshold is 10 at p = 2 and n = 6 sits below it
    assert ps.exponent_table(9, 2.0).radially_bounded
    assert not ps.exponent_table(10, 2.0).radially_bounded
    assert math.isnan(ps.exponent_table(4, 2.0).q2star)


def test_coarse_gelfand_branch():
    spec = ps.ProblemSpec()
    spec.n = 2
    spec.p = 2.0
    spec.f = ps.make_exp()
    spec.M = 200
    br = ps.continue_branch(spec)
    # the planar exponential fold sits at 2; a coarse mesh stays within a percent
    assert br.lambda_last == pytest.approx(2.0, rel=1e-2)
    assert all(pt.mu1 > 0 for pt in br.points[:-1])
    assert max(pt.pohozaev_residual for pt in br.points) < 1e-3


def test_schwarz_preserves_norms():
    f = ps.RadialField()
    f.n = 3
    f.values = [max(0.0, 1.0 - (i / 400.0) ** 2) for i in range(401)]
    rr = ps.schwarz(f, 3, 512)
    for a, b in zip(rr.source_norms, rr.star_norms):
        assert b == pytest.approx(a, rel=1e-2)
    assert ps.lp_norm(rr.vstar, 1.0) == pytest.approx(ps.lp_norm(f, 1.0), rel=1e-2)


def test_michael_simon_sphere_equality():
    for n in (3, 4, 6):
        vals = []
        for radius in (1.0, 2.5):
            chk = ps.michael_simon_zonal(ps.make_sphere(n, radius), lambda th: 1.0,
                                         lambda th: 0.0, 1.0)
            vals.append(chk.minimal_A)
        assert vals[0] == pytest.approx(vals[1], abs=1e-9)  # radius independent


def test_report_matches_published_schema():
    schema_path = os.environ.get("PSTABLE_SCHEMA")
    if not schema_path:
        pytest.skip("PSTABLE_SCHEMA not set (run through ctest)")
    jsonschema = pytest.importorskip("jsonschema")
    with open(schema_path) as fh:
        schema = json.load(fh)

    f = ps.RadialField()
    f.n = 3
    f.values = [max(0.0, 1.0 - (i / 256.0) ** 2) for i in range(257)]
    rep = json.loads(ps.symmetrized_comparison(f, 2.0, 1.0).to_json())
    jsonschema.validate(rep, schema)
    assert rep["pass"]


def test_cli_reports_match_published_schema():
    cli = os.environ.get("PSTABLE_CLI")
    schema_path = os.environ.get("PSTABLE_SCHEMA")
    if not (cli and schema_path):
        pytest.skip("PSTABLE_CLI / PSTABLE_SCHEMA not set (run through ctest)")
    jsonschema = pytest.importorskip("jsonschema")
    with open(schema_path) as fh:
        schema = json.load(fh)

    out = subprocess.run([cli, "verify", "--ineq", "ms", "--n", "4"],
                         capture_output=True, text=True, check=True)
    reports = json.loads(out.stdout)
    assert reports
    for rep in reports:
        jsonschema.validate(rep, schema)
