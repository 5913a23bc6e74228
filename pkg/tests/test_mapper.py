import pytest
from pydantic import ValidationError as PydanticValidationError

from src.opcalc.exceptions import NotFoundError, ParseError
from src.opcalc.mapper import ActionTableMapper, ReportMapper, RingFileMapper
from src.opcalc.mapper.ReportMapper import dumps
from src.opcalc.models import decompose_module
from src.opcalc.ring.expr_parser import parse_ring_expr


def test_load_chow_ring_file():
    ring = RingFileMapper().load("curve-chow-g2")
    assert ring.name == "curve-chow-file"
    p0, K, psi = ring.point_class, ring.K, ring.psi
    assert p0 * p0 == -(psi * p0)
    assert K * p0 == psi * p0
    assert K.pushforward() == ring.scalar(2)
    assert p0.restrict() == -psi
    assert ring.options["genus"] == 2


def test_load_elliptic_ring_file():
    ring = RingFileMapper().load("elliptic-cohomology")
    alpha, beta = ring.gen("alpha1"), ring.gen("beta1")
    assert alpha * beta == ring.point_class
    assert beta * alpha == -ring.point_class
    assert ring.a0.is_zero()
    assert ring.point_class.pushforward() == ring.one()


def test_ring_file_parse_errors():
    with pytest.raises(ParseError) as info:
        RingFileMapper.parse_text("K: even 1\n")
    assert info.value.context["line"] == 1
    with pytest.raises(ParseError) as info:
        RingFileMapper.parse_text("# header\n[generators]\nK even 1\n")
    assert info.value.context["line"] == 3
    with pytest.raises(PydanticValidationError):
        RingFileMapper.parse_text("[generators]\nK: even 1\n[options]\ncolour = blue\n")


def test_ring_file_inline_text():
    text = "[generators]\nx: even 1\n[rules]\nx^3 -> 0\n[options]\nname = cubic\nscalar_mode = rational\n"
    ring = RingFileMapper.build(RingFileMapper.parse_text(text))
    x = ring.gen("x")
    assert (x ** 3).is_zero()
    assert not (x ** 2).is_zero()
    assert parse_ring_expr("1/2*x", ring) * 2 == x


def test_missing_ring_file():
    with pytest.raises(NotFoundError):
        RingFileMapper().load("no-such-ring")


def test_action_tables_decompose():
    two = decompose_module(ActionTableMapper().load("two-copies")).to_dict()
    assert two["m0_dimension"] == 2
    assert two["recomposed"]
    fock = decompose_module(ActionTableMapper().load("fock-weight2")).to_dict()
    assert fock["m0_dimension"] == 1


def test_action_table_parsing():
    table = ActionTableMapper.parse_text(
        "basis a:0 b:1\nmax_weight 1\nop t: a -> b\nop u[1]: a -> 1/2*b\nop du: b -> 2*a\nop dt[1]: b -> -a\n"
    )
    assert table.basis == ["a", "b"]
    assert table.ops["u[1]"]["a"] == {"b": 1 / 2}
    assert table.ops["dt[1]"]["b"] == {"a": -1}
    with pytest.raises(ParseError) as info:
        ActionTableMapper.parse_text("basis a:0\nweights a 0\n")
    assert info.value.context["line"] == 2


def test_report_round_trip(tmp_path):
    payload = {"zeta": 1, "alpha": {"b": [1, 2], "a": "x"}}
    out = tmp_path / "nested" / "report.json"
    ReportMapper().write(payload, str(out))
    assert ReportMapper().read(str(out)) == payload
    text = dumps(payload).decode()
    assert text.index('"alpha"') < text.index('"zeta"')
    assert dumps(payload) == dumps(dict(reversed(list(payload.items()))))


def test_data_dir_from_environment(tmp_path, monkeypatch):
    from src.opcalc.configs import reload_opcalc_config
    from src.opcalc.mapper.paths import resolve_input

    (tmp_path / "tables").mkdir()
    (tmp_path / "tables" / "tiny.table").write_text("basis a:0\nop du: a -> 0\nop dt[1]: a -> 0\n")
    monkeypatch.setenv("OPCALC_DATA_DIR", str(tmp_path))
    reload_opcalc_config()
    try:
        assert resolve_input("tiny", "tables") == (tmp_path / "tables" / "tiny.table").resolve()
        table = ActionTableMapper().load("tiny")
        assert table.basis == ["a"]
        assert table.ops["du"]["a"] == {}
    finally:
        monkeypatch.delenv("OPCALC_DATA_DIR")
        reload_opcalc_config()
