import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from memshield import (
    CommunityCover,
    CommunityFileError,
    load_community_file,
    cumulative_distribution,
    nonzero_overlap_sizes,
    overlap_statistics,
    parse_community_file,
    parse_edge_list,
)

from conftest import random_graph
from oracles import all_pairs_overlap_sizes


@pytest.fixture
def chain4():
    return parse_edge_list(["1 2", "2 3", "3 4"])


class TestParseCommunityFile:
    def test_basic_counting(self, chain4):
        cover = parse_community_file(["1 2 3", "3 4"], chain4)
        assert cover.community_count == 2
        assert cover.membership_number(chain4.index_of("3")) == 2
        assert cover.membership_number(chain4.index_of("1")) == 1
        assert cover.overlap_node_count == 1

    def test_strict_unknown_label_raises_with_line_and_label(self, chain4):
        with pytest.raises(CommunityFileError, match=r"line 2.*'zz'"):
            parse_community_file(["1 2", "3 zz"], chain4)

    def test_loader_strict_error_names_file(self, chain4, tmp_path):
        path = tmp_path / "groups.txt"
        path.write_text("1 2\n3 zz\n")
        with pytest.raises(CommunityFileError, match=r"groups\.txt:2"):
            load_community_file(path, chain4)

    def test_drop_mode_counts_dropped_labels(self, chain4):
        cover = parse_community_file(["1 zz 2", "3 4"], chain4, unknown_labels="drop")
        assert cover.dropped_labels == 1
        assert cover.community_count == 2

    def test_community_empty_after_drop_is_discarded(self, chain4):
        cover = parse_community_file(["zz yy", "1 2"], chain4, unknown_labels="drop")
        assert cover.community_count == 1
        assert cover.discarded_empty == 1

    def test_comments_and_blanks_skipped(self, chain4):
        cover = parse_community_file(["# groups", "", "1 2"], chain4)
        assert cover.community_count == 1

    def test_bad_policy_rejected(self, chain4):
        with pytest.raises(ValueError, match="unknown_labels"):
            parse_community_file(["1 2"], chain4, unknown_labels="ignore")

    def test_repeated_member_counts_once(self, chain4):
        cover = parse_community_file(["1 1 2"], chain4)
        assert cover.community_size(0) == 2
        assert cover.membership_number(chain4.index_of("1")) == 1


class TestMembership:
    def test_examples(self, chain4):
        cover = parse_community_file(["1 2", "1 3", "1 4"], chain4)
        assert cover.membership_number(chain4.index_of("1")) == 3
        assert cover.membership_number(chain4.index_of("2")) == 1

    def test_node_in_no_community(self, chain4):
        cover = parse_community_file(["1 2"], chain4)
        assert cover.membership_number(chain4.index_of("4")) == 0

    def test_classes_are_disjoint_and_cover_community_nodes(self, chain4):
        cover = parse_community_file(["1 2 3", "3 4", "2 3"], chain4)
        classes = cover.membership_classes()
        seen = set()
        for m, nodes in classes.items():
            assert all(cover.membership_number(int(i)) == m for i in nodes)
            as_set = set(int(i) for i in nodes)
            assert not (seen & as_set)
            seen |= as_set
        assert seen == set(int(i) for i in cover.community_nodes())


class TestCommunitySize:
    def test_size_and_singleton(self, chain4):
        cover = parse_community_file(["1 2 3", "4"], chain4)
        assert cover.community_size(0) == 3
        assert cover.community_size(1) == 1

    def test_out_of_range(self, chain4):
        cover = parse_community_file(["1 2"], chain4)
        with pytest.raises(IndexError):
            cover.community_size(1)

    def test_double_counting_identity_on_random_covers(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            n = int(rng.integers(3, 40))
            g = random_graph(rng, n, 0.2)
            cover = _random_cover(rng, g)
            size_sum = sum(cover.community_size(k) for k in range(cover.community_count))
            assert size_sum == int(cover.membership.sum())
            assert cover.overlap_node_count <= len(cover.community_nodes()) <= n


class TestOverlapSize:
    def test_single_shared_node(self, chain4):
        cover = parse_community_file(["1 2 3", "3 4"], chain4)
        assert cover.overlap_size(0, 1) == 1

    def test_disjoint(self, chain4):
        cover = parse_community_file(["1 2", "3 4"], chain4)
        assert cover.overlap_size(0, 1) == 0

    def test_symmetry(self, chain4):
        cover = parse_community_file(["1 2 3", "2 3 4"], chain4)
        assert cover.overlap_size(0, 1) == cover.overlap_size(1, 0) == 2

    def test_same_community_rejected(self, chain4):
        cover = parse_community_file(["1 2", "3 4"], chain4)
        with pytest.raises(ValueError, match="distinct"):
            cover.overlap_size(1, 1)

    def test_nonzero_enumeration_matches_all_pairs_oracle(self):
        rng = np.random.default_rng(99)
        for _ in range(60):
            n = int(rng.integers(4, 30))
            g = random_graph(rng, n, 0.2)
            cover = _random_cover(rng, g, max_communities=20)
            assert list(nonzero_overlap_sizes(cover)) == all_pairs_overlap_sizes(cover)


class TestCumulativeDistribution:
    def test_direct_count(self):
        dist = cumulative_distribution([1, 1, 2])
        assert list(dist.support) == [1, 2]
        assert dist.p[0] == pytest.approx(1.0)
        assert dist.p[1] == pytest.approx(1 / 3)

    def test_all_equal_single_point(self):
        dist = cumulative_distribution([5, 5, 5])
        assert list(dist.support) == [5]
        assert dist.p[0] == pytest.approx(1.0)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            cumulative_distribution([])

    @settings(max_examples=100, deadline=None)
    @given(values=st.lists(st.integers(0, 50), min_size=1, max_size=60))
    def test_non_increasing_and_starts_at_one(self, values):
        dist = cumulative_distribution(values)
        assert dist.p[0] == pytest.approx(1.0)
        assert all(a >= b for a, b in zip(dist.p, dist.p[1:]))
        assert list(dist.support) == sorted(set(values))


class TestOverlapStatistics:
    def test_no_overlap_cover(self, chain4):
        cover = parse_community_file(["1 2", "3 4"], chain4)
        stats = overlap_statistics(chain4, cover)
        assert stats.overlap_node_count == 0
        assert not stats.has_overlap
        assert stats.overlap_size is None
        assert stats.overlap_degree is None

    def test_two_cliques_single_shared_node(self, two_cliques):
        g, cover = two_cliques
        stats = overlap_statistics(g, cover)
        assert stats.overlap_node_count == 1
        assert list(stats.overlap_size.support) == [1]
        assert stats.overlap_size.p[0] == pytest.approx(1.0)
        assert stats.community_count == 2
        assert stats.max_membership == 2
        # degree of the single overlap node (hub of both cliques)
        assert list(stats.overlap_degree.support) == [8]

    def test_membership_distribution_over_community_nodes_only(self, chain4):
        cover = parse_community_file(["1 2", "2 3"], chain4)
        stats = overlap_statistics(chain4, cover)
        # node 4 (m=0) excluded: observations are m values {1, 2, 1}
        assert list(stats.membership.support) == [1, 2]
        assert stats.membership.p[0] == pytest.approx(1.0)
        assert stats.membership.p[1] == pytest.approx(1 / 3)


class TestCoverConstruction:
    def test_empty_community_rejected(self):
        with pytest.raises(ValueError, match="non-empty"):
            CommunityCover([np.array([], dtype=np.int64)], 3)

    def test_member_out_of_range_rejected(self):
        with pytest.raises(ValueError, match="out of range"):
            CommunityCover([np.array([5])], 3)


def _random_cover(rng, graph, max_communities=8):
    n = graph.node_count
    z = int(rng.integers(1, max_communities + 1))
    comms = []
    for _ in range(z):
        size = int(rng.integers(1, max(2, n // 2) + 1))
        comms.append(rng.choice(n, size=min(size, n), replace=False))
    return CommunityCover(comms, n)
