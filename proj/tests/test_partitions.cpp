#include "doctest.h"

#include <algorithm>

#include "tauforge/partition.hpp"

using namespace tauforge;

TEST_CASE("enumeration counts and canonical order") {
    CHECK(partitions_of(5).size() == 7);
    CHECK(partitions_of(6).size() == 11);
    CHECK(partitions_up_to(6).size() == 30);
    CHECK(partitions_up_to(8).size() == 67);

    // ascending weight, then descending lexicographic within a weight
    auto all = partitions_up_to(4);
    CHECK(all.front() == Partition(std::vector<int>{}));
    CHECK(std::is_sorted(all.begin(), all.end()));
    auto w3 = partitions_of(3);
    REQUIRE(w3.size() == 3);
    CHECK(w3[0] == Partition({3}));
    CHECK(w3[1] == Partition({2, 1}));
    CHECK(w3[2] == Partition({1, 1, 1}));
}

TEST_CASE("conjugation is an involution and transposes arm/leg data") {
    Partition la({4, 2, 1});
    CHECK(la.conjugate() == Partition({3, 2, 1, 1}));
    for (const auto& p : partitions_up_to(7)) CHECK(p.conjugate().conjugate() == p);
}

TEST_CASE("frobenius coordinates") {
    Partition la({4, 3, 1});
    FrobeniusForm f = la.frobenius();
    REQUIRE(f.rank() == 2);
    CHECK(f.arms == std::vector<int>{3, 1});
    CHECK(f.legs == std::vector<int>{2, 0});
    CHECK(f.weight() == 8);
    CHECK(f.str() == "(3 1|2 0)");
    CHECK(Partition::from_frobenius(f) == la);

    CHECK(Partition(std::vector<int>{}).frobenius().rank() == 0);
    CHECK(Partition(std::vector<int>{}).frobenius().str() == "(|)");
    CHECK(Partition({2}).frobenius().str() == "(1|0)");
    CHECK(Partition({2}).is_hook());
    CHECK_FALSE(Partition({2, 2}).is_hook());

    // conjugation swaps arms and legs
    for (const auto& p : partitions_up_to(7)) {
        auto a = p.frobenius();
        auto b = p.conjugate().frobenius();
        CHECK(a.arms == b.legs);
        CHECK(a.legs == b.arms);
    }
}

TEST_CASE("partition parsing accepts the common spellings") {
    Partition la({3, 2, 1});
    CHECK(parse_partition("(3,2,1)") == la);
    CHECK(parse_partition("3 2 1") == la);
    CHECK(parse_partition("[3,2,1]") == la);
    CHECK(parse_partition("") == Partition(std::vector<int>{}));
    CHECK(parse_partition("()") == Partition(std::vector<int>{}));
    CHECK_THROWS_AS(parse_partition("(2,x)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_partition("1 3 2"), std::invalid_argument); // not weakly decreasing
    CHECK(la.str() == "(3,2,1)");
}
