import json
import math

import numpy as np
import pytest

from coherence_lab.errors import InvalidStateSpec, IoError, ParseError, TruncationError
from coherence_lab.field import FieldConfig
from coherence_lab.sampling import random_state
from coherence_lab.scalar import scalar_trace
from coherence_lab.states import build_state, number_state
from coherence_lab.traceio import (
    SCALAR_COLUMNS,
    VECTOR_COLUMNS,
    load_state_spec,
    parse_state_spec,
    read_trace,
    records_from_json,
    trace_csv,
    trace_json,
    write_trace,
)
from coherence_lab.vector import vector_trace

FIG2_SPEC = '{"modes":2,"h":{"kind":"number","n":1},"v":{"kind":"number","n":0}}'


def test_parse_examples(fig2_state):
    spec = parse_state_spec(FIG2_SPEC, 8)
    assert spec.kind == "product" and spec.h.n == 1 and spec.v.n == 0
    np.testing.assert_array_equal(build_state(spec, 8).rho, fig2_state.rho)
    spec = parse_state_spec('{"modes":1,"kind":"coherent","alpha":[2,0]}')
    assert spec.kind == "coherent" and spec.alpha == 2
    with pytest.raises(TruncationError):
        parse_state_spec('{"modes":1,"kind":"number","n":500}', 32)


def test_parse_errors():
    with pytest.raises(ParseError) as info:
        parse_state_spec('{"modes":1, "kind":')
    assert info.value.position == 19
    with pytest.raises(InvalidStateSpec):
        parse_state_spec('{"modes":1,"kind":"squeezed"}')
    with pytest.raises(InvalidStateSpec):
        parse_state_spec('{"modes":1,"kind":"number","n":1.5}')
    with pytest.raises(InvalidStateSpec):
        parse_state_spec('{"modes":1,"kind":"superposition","terms":[{"amp":1,"fock":[0,1]}]}')
    with pytest.raises(InvalidStateSpec):
        parse_state_spec('[1, 2]')


def test_parse_superposition_and_density():
    spec = parse_state_spec('{"modes":1,"kind":"superposition","terms":[{"amp":1,"fock":[0]},{"amp":[0,1],"fock":[2]}]}', 8)
    assert build_state(spec, 8).purity == pytest.approx(1)
    text = json.dumps({"modes": 1, "kind": "density", "rho": [[[0.5, 0], [0, 0.5], [0, 0], [0, 0]],
                                                             [[0, -0.5], [0.5, 0], [0, 0], [0, 0]],
                                                             [[0, 0]] * 4, [[0, 0]] * 4]})
    state = build_state(parse_state_spec(text, 4), 4)
    assert state.rho[0, 1] == 0.5j
    with pytest.raises(InvalidStateSpec):
        parse_state_spec(text, 5)


def test_load_from_file(tmp_path):
    path = tmp_path / "state.json"
    path.write_text(FIG2_SPEC)
    assert load_state_spec(str(path), 8).modes == 2


def test_csv_layouts(unit_field, fig2_state):
    recs = scalar_trace(number_state(1, 8), unit_field, [0, 1, 2])
    lines = trace_csv(recs).splitlines()
    assert len(lines) == 4 and lines[0] == ",".join(SCALAR_COLUMNS)
    vrecs = vector_trace(fig2_state, unit_field, [0.0, 0.5])
    lines = trace_csv(vrecs).splitlines()
    assert lines[0] == ",".join(VECTOR_COLUMNS) and len(lines) == 1 + 2 * 4
    wide = trace_csv(vrecs, layout="wide").splitlines()
    assert len(wide) == 3 and len(wide[0].split(",")) == 17


def test_csv_number_format(unit_field):
    (rec,) = scalar_trace(number_state(1, 8), unit_field, [1 / 3])
    row = trace_csv([rec]).splitlines()[1].split(",")
    assert row[0] == format(1 / 3, ".17g") == "0.33333333333333331"
    assert float(row[1]) == rec.g.real


def test_deterministic_output(unit_field, fig2_state, tmp_path):
    grid = np.linspace(0, 2 * math.pi, 16)
    a = vector_trace(fig2_state, unit_field, grid)
    b = vector_trace(fig2_state, unit_field, grid)
    assert trace_csv(a) == trace_csv(b) and trace_json(a) == trace_json(b)
    write_trace(a, "svg", tmp_path / "a.svg")
    write_trace(b, "svg", tmp_path / "b.svg")
    assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()


def test_json_round_trip(rng, tmp_path):
    cfg = FieldConfig(0.8 - 0.3j)
    grid = rng.uniform(-math.pi, math.pi, 5)
    srecs = scalar_trace(random_state(rng, 8, 1, mixed=True), cfg, grid)
    vrecs = vector_trace(random_state(rng, 5, 2, mixed=True), cfg, grid)
    for recs in (srecs, vrecs):
        path = tmp_path / "trace.json"
        write_trace(recs, "json", str(path))
        back = read_trace(str(path))
        assert len(back) == len(recs)
        for x, y in zip(recs, back):
            for name in x.__dataclass_fields__:
                np.testing.assert_allclose(getattr(y, name), getattr(x, name), atol=1e-12, rtol=0)
    with pytest.raises(ParseError):
        records_from_json("{")


def test_write_errors(unit_field, tmp_path):
    recs = scalar_trace(number_state(1, 8), unit_field, [0])
    with pytest.raises(IoError):
        write_trace(recs, "csv", str(tmp_path / "missing" / "x.csv"))
    with pytest.raises(ValueError):
        write_trace([], "csv", str(tmp_path / "x.csv"))
    with pytest.raises(ValueError):
        write_trace(recs, "xml", str(tmp_path / "x.xml"))


def test_figure_shows_sharp_and_ring_panels(unit_field, fig2_state, tmp_path):
    recs = vector_trace(fig2_state, unit_field, np.linspace(0, 2 * math.pi, 64))
    path = tmp_path / "fig2.svg"
    write_trace(recs, "svg", str(path))
    text = path.read_text()
    assert text.startswith("<?xml") and "<svg" in text
    # S0 and S1 have zero ring width, so only S2 and S3 get filled annuli
    assert text.count("opacity: 0.25") == 2
