import itertools
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hexcontact.lattice import (
    OCT,
    PLANAR_I,
    PLANAR_J,
    STEP_UP_PLUS,
    EpsilonSeq,
    Hexagonal,
    descriptor,
    enumerate_grids,
    grid_id,
    hex_layer_offsets,
    is_contact,
    make_epsilon_seq,
    neighbors,
    orientation,
    parse_descriptor,
    reflect_point,
    scaled_sq_dist,
    seq_from_grid_id,
    to_cartesian,
    type_tally,
    uniform_stacking_seq,
)


def seqs(max_span: int = 5):
    """Hypothesis strategy for offset sequences with t1 <= 0 <= t2."""

    @st.composite
    def build(draw):
        t1 = draw(st.integers(-max_span, 0))
        t2 = draw(st.integers(0, max_span))
        signs = draw(st.tuples(*[st.sampled_from((-1, 1))] * (t2 - t1)))
        return EpsilonSeq(t1, t2, signs)

    return build()


def float_scaled_dist(lattice, p, q):
    """Independent oracle: scale * squared Euclidean distance, in floats."""
    fp, fq = to_cartesian(lattice, p), to_cartesian(lattice, q)
    d2 = sum((a - b) ** 2 for a, b in zip(fp, fq))
    return (3.0 if isinstance(lattice, Hexagonal) else 1.0) * d2


def test_generator_lengths():
    # unit balls touch along every generator: all steps have length 2
    from hexcontact.lattice import (
        OCT_GEN_X,
        OCT_GEN_Y,
        OCT_GEN_Z,
        STEP_UP_MINUS,
    )

    for vec in (PLANAR_I, PLANAR_J, STEP_UP_PLUS, STEP_UP_MINUS, OCT_GEN_X, OCT_GEN_Y, OCT_GEN_Z):
        assert math.sqrt(sum(c * c for c in vec)) == pytest.approx(2.0, abs=1e-12)


class TestEpsilonSeq:
    def test_single_layer(self):
        seq = make_epsilon_seq(0, 0, [])
        assert seq.shift(0) == 0
        assert seq.eps(0) == 0

    def test_nine_layer(self):
        seq = make_epsilon_seq(-4, 4, [1] * 8)
        assert seq.layers == range(-4, 5)
        assert seq.shift(4) == 4

    def test_hand_evaluated_shifts(self):
        seq = make_epsilon_seq(-1, 1, [-1, 1])
        assert (seq.shift(-1), seq.shift(0), seq.shift(1)) == (-1, 0, 1)

    @pytest.mark.parametrize(
        "t1,t2,values",
        [
            (1, 2, [1]),          # t1 > 0
            (-2, -1, [-1]),       # t2 < 0
            (-1, 1, [1]),         # wrong length
            (-1, 1, [1, 0]),      # bad sign
            (-1, 1, [1, 2]),      # bad sign
        ],
    )
    def test_rejects_bad_input(self, t1, t2, values):
        with pytest.raises(ValueError):
            make_epsilon_seq(t1, t2, values)

    @given(seqs())
    def test_adjacent_shifts_differ_by_one(self, seq):
        for k in range(seq.t1, seq.t2):
            assert abs(seq.shift(k + 1) - seq.shift(k)) == 1

    @given(seqs())
    def test_shift_is_signed_sum(self, seq):
        for k in seq.layers:
            if k > 0:
                assert seq.shift(k) == sum(seq.eps(t) for t in range(1, k + 1))
            elif k < 0:
                assert seq.shift(k) == sum(seq.eps(t) for t in range(k, 0))
            else:
                assert seq.shift(0) == 0


class TestGridId:
    def test_all_minus_is_zero(self):
        assert grid_id(make_epsilon_seq(-4, 4, [-1] * 8)) == 0

    def test_all_plus_is_255(self):
        assert grid_id(make_epsilon_seq(-4, 4, [1] * 8)) == 255

    def test_mixed(self):
        assert grid_id(make_epsilon_seq(-1, 1, [-1, 1])) == 2

    def test_injective_over_fixed_range(self):
        ids = [grid_id(s) for s in enumerate_grids(-2, 2, normalize=False)]
        assert len(ids) == len(set(ids)) == 16

    @given(seqs(4))
    def test_roundtrip(self, seq):
        assert seq_from_grid_id(seq.t1, seq.t2, grid_id(seq)) == seq

    def test_type_tally_counts_signs(self):
        seq = make_epsilon_seq(-2, 2, [-1, 1, 1, -1])
        assert type_tally(seq) == 2 * 1 + 2 * 2  # two -1s, two +1s
        # the tally forgets positions, unlike grid_id
        other = make_epsilon_seq(-2, 2, [1, -1, -1, 1])
        assert type_tally(other) == type_tally(seq)
        assert grid_id(other) != grid_id(seq)


class TestEnumerateGrids:
    def test_normalized_nine_layer_family_has_128(self):
        assert len(enumerate_grids(-4, 4, normalize=True)) == 128

    def test_one_free_sign(self):
        assert len(enumerate_grids(0, 1, normalize=False)) == 2

    def test_normalized_three_layer(self):
        grids = enumerate_grids(-1, 1, normalize=True)
        assert len(grids) == 2
        assert all(s.eps(1) == 1 for s in grids)

    def test_ordered_by_grid_id(self):
        ids = [grid_id(s) for s in enumerate_grids(-2, 1, normalize=False)]
        assert ids == sorted(ids)

    def test_rejects_single_layer(self):
        with pytest.raises(ValueError):
            enumerate_grids(0, 0)

    def test_normalize_noop_without_upper_layers(self):
        assert len(enumerate_grids(-2, 0, normalize=True)) == 4


class TestCartesian:
    def test_origin_fixed_in_every_grid(self):
        for seq in enumerate_grids(-1, 1, normalize=False):
            assert to_cartesian(Hexagonal(seq), (0, 0, 0)) == (0.0, 0.0, 0.0)

    def test_first_upper_neighbor_is_the_up_plus_step(self):
        lat = Hexagonal(make_epsilon_seq(0, 1, [1]))
        got = to_cartesian(lat, (0, 0, 1))
        assert got == pytest.approx(STEP_UP_PLUS, abs=1e-12)

    def test_octahedral_generator(self):
        assert to_cartesian(OCT, (0, 0, 1)) == pytest.approx((1.0, 1.0, math.sqrt(2)), abs=1e-12)

    def test_layer_out_of_range(self):
        lat = Hexagonal(make_epsilon_seq(0, 1, [1]))
        with pytest.raises(ValueError):
            to_cartesian(lat, (0, 0, 2))


class TestScaledSqDist:
    def test_identical_points(self):
        lat = Hexagonal(make_epsilon_seq(0, 0, []))
        assert scaled_sq_dist(lat, (2, 3, 0), (2, 3, 0)) == 0

    def test_frozen_examples(self):
        lat = Hexagonal(make_epsilon_seq(-4, 4, [1] * 8))
        assert scaled_sq_dist(lat, (0, 0, 0), (1, 0, 0)) == 12
        assert scaled_sq_dist(lat, (0, 0, 0), (1, 1, 0)) == 36

    @given(seqs(), st.data())
    def test_matches_float_oracle_hex(self, seq, data):
        lat = Hexagonal(seq)
        coords = st.tuples(
            st.integers(-50, 50), st.integers(-50, 50), st.integers(seq.t1, seq.t2)
        )
        p, q = data.draw(coords), data.draw(coords)
        assert scaled_sq_dist(lat, p, q) == pytest.approx(float_scaled_dist(lat, p, q), abs=1e-6)

    @given(
        st.tuples(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50)),
        st.tuples(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50)),
    )
    def test_matches_float_oracle_oct(self, p, q):
        assert scaled_sq_dist(OCT, p, q) == pytest.approx(float_scaled_dist(OCT, p, q), abs=1e-6)

    @given(seqs(3), st.data())
    def test_no_overlap_on_grid(self, seq, data):
        lat = Hexagonal(seq)
        coords = st.tuples(
            st.integers(-8, 8), st.integers(-8, 8), st.integers(seq.t1, seq.t2)
        )
        p, q = data.draw(coords), data.draw(coords)
        if p == q:
            return
        d = scaled_sq_dist(lat, p, q)
        assert d >= 12
        assert (d == 12) == is_contact(lat, p, q)


class TestIsContact:
    def test_in_layer_generator(self):
        lat = Hexagonal(make_epsilon_seq(0, 0, []))
        assert is_contact(lat, (0, 0, 0), (0, 1, 0))

    def test_distance_four(self):
        lat = Hexagonal(make_epsilon_seq(0, 0, []))
        assert not is_contact(lat, (0, 0, 0), (2, 0, 0))

    def test_octahedral_step(self):
        assert is_contact(OCT, (0, 0, 0), (0, 0, 1))

    def test_same_ball_rejected(self):
        with pytest.raises(ValueError):
            is_contact(OCT, (1, 2, 3), (1, 2, 3))


def brute_neighbors(lattice, p):
    """Independent oracle: scan a box for points at contact distance."""
    if isinstance(lattice, Hexagonal):
        t1, t2 = lattice.seq.t1, lattice.seq.t2
    else:
        t1, t2 = p[2] - 2, p[2] + 2
    hits = []
    for di, dj, dk in itertools.product(range(-3, 4), range(-3, 4), range(-2, 3)):
        q = (p[0] + di, p[1] + dj, p[2] + dk)
        if q == p or not t1 <= q[2] <= t2:
            continue
        if scaled_sq_dist(lattice, p, q) == (12 if isinstance(lattice, Hexagonal) else 4):
            hits.append(q)
    return sorted(hits)


class TestNeighbors:
    @pytest.mark.parametrize("gid", range(0, 32, 5))
    def test_twelve_regular_interior(self, gid):
        lat = Hexagonal(seq_from_grid_id(-2, 3, gid))
        for p in [(0, 0, 0), (4, -3, 1), (-2, 5, -1), (1, 1, 2)]:
            nb = neighbors(lat, p)
            assert len(nb) == 12
            assert all(is_contact(lat, p, q) for q in nb)
            assert sorted(nb) == brute_neighbors(lat, p)

    def test_boundary_layer_has_nine(self):
        lat = Hexagonal(make_epsilon_seq(-4, 4, [1, -1] * 4))
        assert len(neighbors(lat, (0, 0, 4))) == 9
        assert len(neighbors(lat, (0, 0, -4))) == 9

    def test_octahedral_offsets_match_brute_force(self):
        nb = neighbors(OCT, (3, -1, 2))
        assert len(nb) == 12
        assert sorted(nb) == brute_neighbors(OCT, (3, -1, 2))

    def test_deterministic_offset_order(self):
        lat = Hexagonal(make_epsilon_seq(-1, 1, [1, 1]))
        nb = neighbors(lat, (0, 0, 0))
        deltas = [(q[2] - 0, q[0] - 0, q[1] - 0) for q in nb]
        assert deltas == sorted(deltas)

    def test_layer_offsets_clip_silently(self):
        seq = make_epsilon_seq(0, 1, [1])
        assert len(hex_layer_offsets(seq, 0)) == 9
        assert len(hex_layer_offsets(seq, 1)) == 9


class TestReflection:
    @given(seqs(4), st.data())
    def test_mirror_negates_xy_keeps_z(self, seq, data):
        lat, mirror = Hexagonal(seq), Hexagonal(seq.flipped())
        p = data.draw(
            st.tuples(st.integers(-9, 9), st.integers(-9, 9), st.integers(seq.t1, seq.t2))
        )
        x, y, z = to_cartesian(lat, p)
        xr, yr, zr = to_cartesian(mirror, reflect_point(p))
        assert (xr, yr, zr) == pytest.approx((-x, -y, z), abs=1e-12)

    @given(seqs(4), st.data())
    def test_mirror_preserves_scaled_dist(self, seq, data):
        lat, mirror = Hexagonal(seq), Hexagonal(seq.flipped())
        coords = st.tuples(
            st.integers(-9, 9), st.integers(-9, 9), st.integers(seq.t1, seq.t2)
        )
        p, q = data.draw(coords), data.draw(coords)
        assert scaled_sq_dist(lat, p, q) == scaled_sq_dist(
            mirror, reflect_point(p), reflect_point(q)
        )

    @given(seqs(4))
    def test_orientation_flips_with_the_grid(self, seq):
        if seq.t2 - seq.t1 == 0:
            assert orientation(seq) == 1
        else:
            assert orientation(seq) == -orientation(seq.flipped())

    def test_normalized_grids_have_positive_orientation(self):
        assert all(orientation(s) == 1 for s in enumerate_grids(-3, 3, normalize=True))


def test_uniform_stacking_hits_the_true_lattice():
    # The same-step-everywhere grid is the integer span of the two planar
    # generators and the up-plus step vector.
    lat = Hexagonal(uniform_stacking_seq(-4, 4))
    rng = random.Random(7)
    for _ in range(100):
        x, y, z = rng.randint(-20, 20), rng.randint(-20, 20), rng.randint(-4, 4)
        want = tuple(
            x * a + y * b + z * c for a, b, c in zip(PLANAR_I, PLANAR_J, STEP_UP_PLUS)
        )
        assert to_cartesian(lat, (x, y, z)) == pytest.approx(want, abs=1e-9)


class TestDescriptor:
    @pytest.mark.parametrize("text", ["hex:-1..1:01", "hex:-4..4:11111111", "hex:0..0:", "oct"])
    def test_roundtrip(self, text):
        assert descriptor(parse_descriptor(text)) == text

    @given(seqs(4))
    def test_roundtrip_random(self, seq):
        lat = Hexagonal(seq)
        assert parse_descriptor(descriptor(lat)) == lat

    @pytest.mark.parametrize(
        "bad", ["hex", "hex:1..2", "hex:a..b:01", "hex:-1..1:02", "cubic", "hex:-1..1:01:x"]
    )
    def test_rejects_malformed(self, bad):
        with pytest.raises(ValueError):
            parse_descriptor(bad)
