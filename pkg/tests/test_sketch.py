import json
import math
import struct

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rigidkit import (
    BipartiteRegularGraph,
    DecodeError,
    ParameterError,
    ScaleError,
    SketchBits,
    bytes_to_sketch,
    capacity_bound_log2,
    count_leading_term_log2,
    count_regular_log2,
    counting_gap_demo,
    cut_capacity_bound_log2,
    d_for_epsilon_cut,
    d_for_epsilon_spectral,
    decode_relative,
    edge_overlap,
    encode_relative,
    enumerate_regular_exact,
    load_sketch,
    lower_bound_bits_cut,
    lower_bound_bits_spectral,
    mutual_approx_bound,
    perturb_edges,
    random_bipartite_regular,
    random_regular,
    save_sketch,
    sketch_to_bytes,
    spectral_approx_factor,
)
from rigidkit.sketch import SketchLayout

from helpers import bipartite_pair, matching_pair


# ---------------------------------------------------------------- encoding


def test_self_sketch_is_all_ones_bitmap():
    g = random_bipartite_regular(8, 3, seed=0)
    s = encode_relative(g, g)
    assert s.bits == "1" * 12
    assert s.layout.extra_edge_count == 0
    assert len(s.bits) == 12


def test_disjoint_matchings_sketch():
    g, h = matching_pair()
    s = encode_relative(g, h)
    # No shared edges: zero bitmap, then both of g's edges as 2-bit ids.
    assert s.bits == "00" + "0010" + "0111"
    assert s.layout == SketchLayout(
        membership_bits=2, extra_edge_count=2, bits_per_vertex=2
    )


def test_length_law_on_perturbed_pair():
    g = random_regular(60, 6, seed=1)
    h = perturb_edges(g, 5, seed=2)
    s = encode_relative(g, h)
    only_g = edge_overlap(g, h).only_g
    assert len(s.bits) == 60 * 6 // 2 + 2 * 6 * only_g  # ceil(lg 60) = 6
    assert s.layout.extra_edge_count == only_g


def test_round_trip_preserves_graph_and_type():
    g, h = bipartite_pair(16, 3, swaps=4, seed=3)
    back = decode_relative(encode_relative(g, h), h)
    assert back == g
    assert isinstance(back, BipartiteRegularGraph)
    plain_g = random_regular(18, 4, seed=4)
    plain_h = perturb_edges(plain_g, 3, seed=5)
    assert decode_relative(encode_relative(plain_g, plain_h), plain_h) == plain_g


def test_decode_rejects_wrong_reference():
    g, h = bipartite_pair(16, 3, swaps=4, seed=6)
    other = random_bipartite_regular(16, 3, seed=99)
    s = encode_relative(g, h)
    with pytest.raises(DecodeError):
        decode_relative(s, other)


def test_decode_rejects_malformed_payloads():
    h = random_bipartite_regular(8, 2, seed=7)
    ref = encode_relative(h, h)
    bpv = ref.layout.bits_per_vertex

    def bits_for(u, v):
        return f"{u:0{bpv}b}{v:0{bpv}b}"

    def sketch(bits, extras):
        return SketchBits(
            bits=bits,
            n=8,
            d=2,
            reference_id=ref.reference_id,
            layout=SketchLayout(8, extras, bpv),
        )

    first_ref_edge = h.edges[0]
    cases = [
        sketch("1" * 8 + bits_for(*first_ref_edge), 1),  # extra already in h
        sketch("0" + "1" * 7 + bits_for(3, 1), 1),  # endpoints out of order
        sketch("0" + "1" * 7 + bits_for(2, 2), 1),  # loop
        sketch("01" * 4 + bits_for(0, 5) * 2, 2),  # duplicate extra
        sketch("0" + "1" * 7, 0),  # degree deficit, no replacement
    ]
    for s in cases:
        with pytest.raises(DecodeError):
            decode_relative(s, h)


def test_sketch_bits_validates_shape():
    with pytest.raises(ParameterError):
        SketchBits(bits="10", n=8, d=2, reference_id="x", layout=SketchLayout(8, 0, 3))
    with pytest.raises(ParameterError):
        SketchBits(
            bits="2" * 8, n=8, d=2, reference_id="x", layout=SketchLayout(8, 0, 3)
        )
    with pytest.raises(ParameterError):
        SketchBits(
            bits="1" * 8, n=8, d=2, reference_id="x", layout=SketchLayout(8, 0, 4)
        )


# ---------------------------------------------------------------- bytes


def test_byte_frame_is_frozen():
    g = random_bipartite_regular(8, 3, seed=0)
    blob = sketch_to_bytes(encode_relative(g, g))
    assert blob == b"RGDS" + struct.pack("<IIII", 1, 8, 3, 0) + b"\xff\xf0"


def test_byte_round_trip_and_determinism(tmp_path):
    g, h = bipartite_pair(20, 3, swaps=5, seed=8)
    s = encode_relative(g, h)
    blob = sketch_to_bytes(s)
    assert blob == sketch_to_bytes(encode_relative(g, h))
    assert bytes_to_sketch(blob, h) == s
    path = tmp_path / "s.sketch"
    save_sketch(s, str(path))
    assert load_sketch(str(path), h) == s
    assert path.read_bytes() == blob


def test_bytes_reject_corruption():
    g, h = bipartite_pair(16, 3, swaps=2, seed=9)
    blob = sketch_to_bytes(encode_relative(g, h))
    with pytest.raises(DecodeError):
        bytes_to_sketch(b"XXXX" + blob[4:], h)
    with pytest.raises(DecodeError):
        bytes_to_sketch(blob[:4] + struct.pack("<I", 2) + blob[8:], h)
    with pytest.raises(DecodeError):
        bytes_to_sketch(blob[:-1], h)
    with pytest.raises(DecodeError):
        bytes_to_sketch(blob + b"\x00", h)
    other = random_bipartite_regular(18, 3, seed=9)
    with pytest.raises(DecodeError):
        bytes_to_sketch(blob, other)


def test_bytes_reject_nonzero_padding():
    # 12 payload bits leave 4 padding bits in the final byte.
    g = random_bipartite_regular(8, 3, seed=0)
    blob = sketch_to_bytes(encode_relative(g, g))
    assert blob[-1] == 0xF0
    with pytest.raises(DecodeError):
        bytes_to_sketch(blob[:-1] + bytes([0xF1]), g)


@settings(max_examples=25, deadline=None)
@given(
    swaps=st.integers(min_value=0, max_value=10),
    seed=st.integers(min_value=0, max_value=10**6),
)
def test_round_trip_and_length_law_property(swaps, seed):
    g = random_regular(24, 3, seed=seed)
    h = perturb_edges(g, swaps, seed=seed + 1)
    s = encode_relative(g, h)
    only_g = edge_overlap(g, h).only_g
    assert len(s.bits) == 36 + 2 * 5 * only_g
    assert decode_relative(s, h) == g
    assert bytes_to_sketch(sketch_to_bytes(s), h) == s


# ---------------------------------------------------------------- capacity


def test_capacity_at_zero_epsilon_is_reference_bits():
    assert capacity_bound_log2(100, 6, 0.0) == 300.0
    assert cut_capacity_bound_log2(100, 6, 0.0) == 300.0


def test_capacity_frozen_value():
    assert capacity_bound_log2(2**20, 400, 0.01) == pytest.approx(
        1719664640.0, rel=1e-12
    )


def test_capacity_monotone():
    caps = [capacity_bound_log2(4096, 16, e) for e in (0.0, 0.05, 0.1, 0.2)]
    assert caps == sorted(caps)
    cut_caps = [cut_capacity_bound_log2(4096, 16, e) for e in (0.0, 0.1, 0.5, 1.0)]
    assert cut_caps == sorted(cut_caps)


def test_capacity_domain():
    with pytest.raises(ParameterError):
        capacity_bound_log2(100, 6, 0.5)
    with pytest.raises(ParameterError):
        cut_capacity_bound_log2(100, 6, -0.1)
    cut_capacity_bound_log2(100, 6, 0.75)  # cut form has no 1/2 ceiling


def test_mutual_approx_bound():
    assert mutual_approx_bound(0.0) == 0.0
    assert mutual_approx_bound(1.0 / 3.0) == pytest.approx(1.0)
    assert mutual_approx_bound(0.5) == pytest.approx(2.0)
    with pytest.raises(ParameterError):
        mutual_approx_bound(1.0)


def test_mutual_approx_bound_holds_empirically():
    f = random_regular(16, 4, seed=3)
    g = perturb_edges(f, 1, seed=11)
    h = perturb_edges(f, 1, seed=12)
    eps = max(
        spectral_approx_factor(f, g).epsilon,
        spectral_approx_factor(g, f).epsilon,
        spectral_approx_factor(f, h).epsilon,
        spectral_approx_factor(h, f).epsilon,
    )
    cross = max(
        spectral_approx_factor(g, h).epsilon,
        spectral_approx_factor(h, g).epsilon,
    )
    assert cross <= mutual_approx_bound(eps) + 1e-9


# ---------------------------------------------------------------- counting


def test_enumerator_frozen_values():
    assert enumerate_regular_exact(4, 2) == 3
    assert enumerate_regular_exact(4, 3) == 1
    assert enumerate_regular_exact(5, 2) == 12
    assert enumerate_regular_exact(6, 3) == 70
    assert enumerate_regular_exact(8, 3) == 19355
    assert enumerate_regular_exact(5, 3) == 0  # odd degree sum
    assert enumerate_regular_exact(4, 0) == 1


def test_enumerator_scale_cap():
    with pytest.raises(ScaleError):
        enumerate_regular_exact(13, 2)
    with pytest.raises(ScaleError):
        enumerate_regular_exact(12, 3)


def test_count_formula_against_enumerator():
    # abs_error in bits at the four reference points; the (4, 3) point sits
    # far outside the d^2 <= n regime and its error is the largest.
    expected = {
        (4, 2): 0.1932,
        (4, 3): 0.6932,
        (6, 3): 0.0271,
        (8, 3): 0.0091,
    }
    for (n, d), err in expected.items():
        if d * d > n:
            with pytest.warns(RuntimeWarning):
                est = count_regular_log2(n, d)
        else:
            est = count_regular_log2(n, d)
        exact = enumerate_regular_exact(n, d)
        assert abs(est.log2_count - math.log2(exact)) == pytest.approx(err, abs=1e-3)
        assert est.in_regime == (d * d <= n)


def test_count_formula_rejects_odd_degree_sum():
    with pytest.raises(ParameterError):
        count_regular_log2(5, 3)


def test_leading_term_value_and_form():
    val = count_leading_term_log2(10**6, 400)
    assert val == pytest.approx(2257542475.9098897, rel=1e-12)
    assert val == pytest.approx(
        (400 * 10**6 / 2) * math.log2(10**6 / 400), rel=1e-12
    )


def test_count_accepts_only_integers():
    with pytest.raises(ParameterError):
        count_regular_log2(8.0, 3)
    with pytest.raises(ParameterError):
        count_leading_term_log2(8, 3.0)


# ---------------------------------------------------------------- lower bounds


def test_lower_bound_frozen_values():
    assert lower_bound_bits_spectral(2**20, 0.1) == pytest.approx(
        2**20 * 20 / 5.0, rel=1e-12
    )
    assert lower_bound_bits_cut(2**20, 0.1) == pytest.approx(
        2**20 * 20 / 23.04, rel=1e-12
    )


def test_lower_bound_constant_ratio():
    for n in (2**16, 2**20):
        for eps in (0.02, 0.1):
            ratio = lower_bound_bits_spectral(n, eps) / lower_bound_bits_cut(n, eps)
            assert ratio == pytest.approx(2304.0 / 500.0, rel=1e-12)


def test_lower_bound_domain():
    for fn in (lower_bound_bits_spectral, lower_bound_bits_cut):
        with pytest.raises(ParameterError):
            fn(2**20, 0.0)
        with pytest.raises(ParameterError):
            fn(2**20, 1.0)
        with pytest.raises(ParameterError):
            fn(1, 0.1)


def test_degree_selection():
    assert d_for_epsilon_spectral(0.01) == 400
    assert d_for_epsilon_spectral(0.1) == 4
    assert d_for_epsilon_cut(0.1) == 1
    assert d_for_epsilon_cut(0.01) == 70


# ---------------------------------------------------------------- gap demo


def test_gap_demo_requires_asymptotic_regime():
    with pytest.raises(ParameterError):
        counting_gap_demo(10**6, 0.01, "spectral")  # eps^4 n = 0.01


def test_gap_demo_spectral_positive_and_monotone():
    gaps = []
    for n in (200000, 400000, 800000):
        rep = counting_gap_demo(n, 0.1, "spectral")
        assert rep.gap_log2 == rep.count_log2 - rep.capacity_log2
        assert rep.gap_positive == (rep.gap_log2 > 0)
        assert rep.gap_positive
        gaps.append(rep.gap_log2)
    assert gaps[0] < gaps[1] < gaps[2]


def test_gap_demo_cut_branch():
    rep = counting_gap_demo(2**20, 0.1, "cut")
    assert rep.kind == "cut"
    assert rep.d == 1
    # At this degree the double-cover count is far below the cut capacity.
    assert not rep.gap_positive


def test_gap_demo_cut_needs_n_divisible_by_four():
    with pytest.raises(ParameterError):
        counting_gap_demo(2**20 + 2, 0.1, "cut")


def test_gap_demo_rejects_unknown_kind():
    with pytest.raises(ParameterError):
        counting_gap_demo(2**20, 0.1, "both")
