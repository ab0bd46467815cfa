#include "tauforge/partition.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace tauforge {

int FrobeniusForm::weight() const {
    int w = rank();
    for (int m : arms) w += m;
    for (int n : legs) w += n;
    return w;
}

std::string FrobeniusForm::str() const {
    std::string out = "(";
    for (size_t i = 0; i < arms.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(arms[i]);
    }
    out += '|';
    for (size_t i = 0; i < legs.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(legs[i]);
    }
    out += ')';
    return out;
}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0) throw std::invalid_argument("Partition: nonpositive part");
        if (i && parts_[i] > parts_[i - 1])
            throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
    weight_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::conjugate() const {
    if (parts_.empty()) return Partition();
    std::vector<int> c(parts_[0]);
    for (int j = 0; j < parts_[0]; ++j) {
        int cnt = 0;
        for (int p : parts_)
            if (p > j) ++cnt;
        c[j] = cnt;
    }
    return Partition(std::move(c));
}

FrobeniusForm Partition::frobenius() const {
    FrobeniusForm f;
    Partition conj = conjugate();
    for (int i = 1; i <= length(); ++i) {
        if (part(i) < i) break;
        f.arms.push_back(part(i) - i);
        f.legs.push_back(conj.part(i) - i);
    }
    return f;
}

Partition Partition::from_frobenius(const FrobeniusForm& f) {
    if (f.arms.size() != f.legs.size())
        throw std::invalid_argument("Frobenius: rank mismatch");
    int r = f.rank();
    for (int i = 1; i < r; ++i)
        if (f.arms[i] >= f.arms[i - 1] || f.legs[i] >= f.legs[i - 1])
            throw std::invalid_argument("Frobenius: coordinates must strictly decrease");
    for (int i = 0; i < r; ++i)
        if (f.arms[i] < 0 || f.legs[i] < 0)
            throw std::invalid_argument("Frobenius: negative coordinate");

    // rows i <= r are m_i + i; column counts below the diagonal come from legs
    std::vector<int> parts;
    for (int i = 0; i < r; ++i) parts.push_back(f.arms[i] + i + 1);
    // row r+k (k >= 1) has length = #{columns j <= r reaching it}; column
    // i+1 has n_i + i + 1 boxes in total
    int maxleg = r ? f.legs[0] : 0;
    for (int k = 1; k <= maxleg; ++k) {
        int cnt = 0;
        for (int i = 0; i < r; ++i)
            if (f.legs[i] + i + 1 >= r + k) ++cnt;
        if (cnt == 0) break;
        parts.push_back(cnt);
    }
    return Partition(std::move(parts));
}

bool Partition::is_hook() const {
    return length() <= 1 || part(2) <= 1;
}

std::string Partition::str() const {
    std::string out = "(";
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(parts_[i]);
    }
    out += ')';
    return out;
}

namespace {

void gen(int rem, int maxpart, std::vector<int>& acc, std::vector<Partition>& out) {
    if (rem == 0) {
        out.push_back(Partition(acc));
        return;
    }
    for (int p = std::min(rem, maxpart); p >= 1; --p) {
        acc.push_back(p);
        gen(rem - p, p, acc, out);
        acc.pop_back();
    }
}

} // namespace

std::vector<Partition> partitions_of(int w) {
    if (w < 0) throw std::invalid_argument("partitions_of: negative weight");
    std::vector<Partition> out;
    std::vector<int> acc;
    gen(w, w, acc, out);
    return out;
}

std::vector<Partition> partitions_up_to(int n) {
    std::vector<Partition> out;
    for (int w = 0; w <= n; ++w) {
        auto pw = partitions_of(w);
        out.insert(out.end(), pw.begin(), pw.end());
    }
    return out;
}

Partition parse_partition(const std::string& s) {
    std::vector<int> parts;
    int cur = -1;
    for (char ch : s) {
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            cur = (cur < 0 ? 0 : cur) * 10 + (ch - '0');
        } else if (ch == ',' || ch == ' ' || ch == '(' || ch == ')' || ch == '[' ||
                   ch == ']') {
            if (cur >= 0) parts.push_back(cur);
            cur = -1;
        } else {
            throw std::invalid_argument("partition: unexpected character in '" + s + "'");
        }
    }
    if (cur >= 0) parts.push_back(cur);
    return Partition(std::move(parts));
}

} // namespace tauforge
