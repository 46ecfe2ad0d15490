import numpy as np
import pytest

from qmatreps.algebra import MAT2, SYM2
from qmatreps.analysis import cyclic_compress
from qmatreps.catalog import build_simplest, build_sym_series
from qmatreps.hilbert.io import export_operator, export_rep, import_operator, import_rep


@pytest.mark.parametrize("make", [
    lambda: build_sym_series("pi4", (0.37,), 0.5, (6, 6)),
    lambda: build_sym_series("pi1", (0.1, 0.2), 0.5, ()),
    lambda: build_simplest(MAT2, "calF2", 0.3, 3),
])
def test_round_trip_is_bit_exact(make):
    rep = make()
    back = import_rep(export_rep(rep))
    assert back.algebra == rep.algebra and back.q == rep.q
    for g in rep.gens:
        assert np.array_equal(back.gens[g].dense(), rep.gens[g].dense())
        assert back.gens[g].bandwidth == rep.gens[g].bandwidth


def test_graded_basis_round_trip():
    p5 = build_sym_series("pi5", (), 0.5, (6, 6, 6))
    v = np.zeros(p5.size)
    v[0] = 1
    c = cyclic_compress(p5, v, 2)
    back = import_rep(export_rep(c))
    assert np.array_equal(back.basis.levels, c.basis.levels)


def test_format_lines():
    rep = build_sym_series("pi2", (0.0,), 0.5, 3)
    text = export_operator(rep.gens[next(iter(rep.gens))], SYM2, "z11", 0.5)
    header, *rows = text.splitlines()
    assert header.startswith("# {")
    assert all(len(r.split()) == 4 for r in rows)


@pytest.mark.parametrize("text", ["", "0 0 1 0\n", '# {"format": 9}\n',
                                  '# {"format": 1, "dims": [2], "bandwidth": [0], "size": 2, "algebra": "sym", '
                                  '"generator": "z11", "q": 0.5}\n5 0 1.0 0.0\n'])
def test_malformed_input(text):
    with pytest.raises(ValueError):
        import_operator(text)
