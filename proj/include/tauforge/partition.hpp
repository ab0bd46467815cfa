#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tauforge {

struct FrobeniusForm {
    // arm lengths m_i and leg lengths n_i of the diagonal cells, both strictly
    // decreasing; rank() == arms.size() == legs.size()
    std::vector<int> arms;
    std::vector<int> legs;

    int rank() const { return static_cast<int>(arms.size()); }
    int weight() const;
    std::string str() const; // "(m1 m2|n1 n2)", "(|)" for the empty partition

    friend bool operator==(const FrobeniusForm&, const FrobeniusForm&) = default;
};

/// Integer partition: weakly decreasing positive parts.
///
/// operator< is the canonical expansion order used everywhere downstream:
/// ascending weight first, then descending lexicographic on parts, matching
/// the order partitions are enumerated and reported in.
class Partition {
public:
    Partition() {}
    explicit Partition(std::vector<int> parts);

    static Partition from_frobenius(const FrobeniusForm& f);

    int weight() const { return weight_; }
    int length() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }
    const std::vector<int>& parts() const { return parts_; }

    /// 1-based row index; 0 for rows beyond the length.
    int part(int i) const {
        return (i >= 1 && i <= length()) ? parts_[i - 1] : 0;
    }

    Partition conjugate() const;
    FrobeniusForm frobenius() const;
    bool is_hook() const; // Frobenius rank <= 1

    std::string str() const; // "(3,2,1)", "()" for empty

    friend bool operator==(const Partition&, const Partition&) = default;
    friend bool operator<(const Partition& a, const Partition& b) {
        if (a.weight_ != b.weight_) return a.weight_ < b.weight_;
        return b.parts_ < a.parts_; // descending lexicographic within a weight
    }

private:
    std::vector<int> parts_;
    int weight_ = 0;
};

struct SignedPartition {
    Partition part;
    int sign = 1; // +1 or -1

    friend bool operator==(const SignedPartition&, const SignedPartition&) = default;
    friend bool operator<(const SignedPartition& a, const SignedPartition& b) {
        if (a.part == b.part) return a.sign < b.sign;
        return a.part < b.part;
    }
};

/// All partitions of exactly w, in descending lexicographic order.
std::vector<Partition> partitions_of(int w);

/// All partitions of weight <= n in the canonical order.
std::vector<Partition> partitions_up_to(int n);

/// Parses "(3,2,1)", "[3,2,1]", "3 2 1" or "" (empty partition).
Partition parse_partition(const std::string& s);

} // namespace tauforge
