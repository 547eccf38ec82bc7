from pytest import mark
from pytest import raises

from core.errors import ConfigError
from core.errors import NonTorsionRequired
from core.errors import TooLarge
from core.params import EigenData
from core.params import build_strings
from core.params import classify
from core.params import enumerate_multisegments
from core.params import orbit_count_oracle

T = (0.2113, 0.4771)


def string(base, steps, t=T):
    """Points base + k t for every k in steps."""
    return [[base[0] + k * t[0], base[1] + k * t[1]] for k in steps]


def eigen(points, curve, t=T):
    return EigenData.from_json({"points": points, "t": list(t)}, curve)


@mark.parametrize("steps dims count".split(),
                  (((0,),        [[1]],       1),
                   ((0, 1),      [[1, 1]],    2),
                   ((0, 1, 2),   [[1, 1, 1]], 4),
                   ((0, 0),      [[2]],       1),
                   ((0, 0, 1),   [[2, 1]],    2),
                   ((2, 0),      [[1, 0, 1]], 1)))
def test_single_string_counts(curve, steps, dims, count):
    result = classify(eigen(string((0.1, 0.3), steps), curve), curve)
    assert result["dim_vectors"] == dims
    assert result["count"] == count == len(result["parameters"])
    assert result["oracle_counts"] == {"F2": count, "F3": count}


def test_independent_strings_multiply(curve):
    points = string((0.1, 0.3), (0, 1)) + string((0.62, 0.05), (0, 1))
    result = classify(eigen(points, curve), curve)
    assert len(result["strings"]) == 2
    assert result["count"] == 4


def test_multisegments_cover_the_content(curve):
    sq = build_strings(eigen(string((0.1, 0.3), (0, 1, 1, 2)), curve), curve)
    assert sq.dim_vectors == [[1, 2, 1]]
    segments = enumerate_multisegments(sq)
    assert len(segments) == len({ms.segments for ms in segments})
    assert all(ms.content(sq) == sq.dim_vectors for ms in segments)


def test_large_inputs_skip_the_oracle(curve):
    result = classify(eigen(string((0.1, 0.3), range(5)), curve), curve)
    assert result["count"] == 16
    assert result["oracle_counts"] == {}
    sq = build_strings(eigen(string((0.1, 0.3), range(5)), curve), curve)
    with raises(TooLarge):
        orbit_count_oracle(sq, 2)
    with raises(ValueError):
        orbit_count_oracle(build_strings(eigen(string((0.1, 0.3), (0,)), curve), curve), 5)


def test_rejects(curve):
    with raises(NonTorsionRequired):
        build_strings(eigen(string((0.1, 0.3), (0, 1), t=(0.5, 0.0)), curve, t=(0.5, 0.0)), curve)
    with raises(TooLarge):
        build_strings(eigen(string((0.1, 0.3), range(9)), curve), curve)
    with raises(ConfigError):
        EigenData.from_json({"points": [], "t": list(T)}, curve)
    with raises(ConfigError):
        EigenData.from_json({"points": [[0.1]], "t": list(T)}, curve)
