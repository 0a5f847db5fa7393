import numpy as np
import pytest
from numpy.testing import assert_allclose

from qcorr import ParseError, named_state
from qcorr.fileio import (
    parse_channel_document,
    parse_channel_spec,
    parse_state_text,
    read_state_file,
    resolve_channel,
    write_state_file,
)


def test_state_round_trip(tmp_path, discordant_state):
    path = tmp_path / "state.json"
    write_state_file(str(path), discordant_state.mat)
    assert_allclose(read_state_file(str(path)), discordant_state.mat, atol=0)


def test_state_round_trip_complex(tmp_path):
    ket = np.array([1.0, 0.0, 0.0, 1.0j]) / np.sqrt(2)
    rho = np.outer(ket, ket.conj())  # has entries +-0.5j
    path = tmp_path / "state.json"
    write_state_file(str(path), rho)
    assert_allclose(read_state_file(str(path)), rho, atol=0)


def test_parse_state_accepts_pairs():
    text = """
    [[0.5, 0, 0, [0.0, 0.5]],
     [0, 0, 0, 0],
     [0, 0, 0, 0],
     [[0.0, -0.5], 0, 0, 0.5]]
    """
    mat = parse_state_text(text)
    assert mat[0, 3] == 0.5j
    assert mat[3, 0] == -0.5j


def test_parse_state_rejects_bad_shapes():
    with pytest.raises(ParseError):
        parse_state_text("[[1, 0], [0, 0]]")
    with pytest.raises(ParseError):
        parse_state_text("[[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0]]")
    with pytest.raises(ParseError):
        parse_state_text("not json at all")
    with pytest.raises(ParseError):
        parse_state_text('[[true,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,1]]')
    with pytest.raises(ParseError):
        parse_state_text('[[[1,2,3],0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,1]]')


def test_read_state_file_missing(tmp_path):
    with pytest.raises(ParseError):
        read_state_file(str(tmp_path / "nope.json"))


def test_parse_channel_spec_inline():
    assert len(parse_channel_spec("identity").ops) == 1
    assert len(parse_channel_spec("zero_plus").ops) == 2
    assert len(parse_channel_spec("depolarizing(0.5)").ops) == 4
    assert len(parse_channel_spec(" dephasing( 0.25 ) ").ops) == 2


def test_parse_channel_spec_rejects_garbage():
    with pytest.raises(ParseError):
        parse_channel_spec("dephasing(")
    with pytest.raises(ParseError):
        parse_channel_spec("1234!!")


def test_parse_channel_document_builtin():
    chan = parse_channel_document({"builtin": "dephasing", "param": 0.5})
    ok = sum(op.conj().T @ op for op in chan.ops)
    assert_allclose(ok, np.eye(2), atol=1e-12)


def test_parse_channel_document_kraus():
    doc = {"kraus": [[[1, 0], [0, 0]], [[0, [0.0, 1.0]], [0, 0]]]}
    chan = parse_channel_document(doc)
    assert len(chan.ops) == 2
    assert chan.ops[1][0, 1] == 1j


def test_parse_channel_document_rejects_ambiguity():
    with pytest.raises(ParseError):
        parse_channel_document({"builtin": "identity", "kraus": [[[1, 0], [0, 1]]]})
    with pytest.raises(ParseError):
        parse_channel_document({})
    with pytest.raises(ParseError):
        parse_channel_document({"kraus": []})
    with pytest.raises(ParseError):
        parse_channel_document([1, 2, 3])


def test_resolve_channel_prefers_files(tmp_path):
    path = tmp_path / "chan.json"
    path.write_text('{"builtin": "identity"}')
    assert len(resolve_channel(str(path)).ops) == 1
    assert len(resolve_channel("identity").ops) == 1
    with pytest.raises(ParseError):
        resolve_channel(str(tmp_path / "missing.json"))
