#include "resil/types.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace resil {

namespace {

// Ceiling on eagerly materialized safe sets.
constexpr std::size_t kMaxSafePoints = 20'000'000;

void enumerate_box(std::size_t n, std::int64_t k, IntVector& cur, std::size_t dim,
                   std::vector<IntVector>& out, auto&& keep) {
    if (dim == n) {
        if (keep(cur)) {
            out.push_back(cur);
        }
        return;
    }
    for (std::int64_t v = -k; v <= k; ++v) {
        cur[dim] = v;
        enumerate_box(n, k, cur, dim + 1, out, keep);
    }
}

void check_box_size(std::size_t n, std::int64_t k) {
    if (n == 0) {
        throw Error(ErrorCode::InvalidArgument, "safe set dimension must be at least 1");
    }
    if (k < 0) {
        throw Error(ErrorCode::InvalidArgument, "safe set radius must be nonnegative");
    }
    double count = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        count *= static_cast<double>(2 * k + 1);
    }
    if (count > static_cast<double>(kMaxSafePoints)) {
        throw Error(ErrorCode::TooLarge, "safe set has too many points to materialize");
    }
}

}  // namespace

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::DuplicateControl: return "DuplicateControl";
        case ErrorCode::X0NotSafe: return "X0NotSafe";
        case ErrorCode::MTooLarge: return "MTooLarge";
        case ErrorCode::EmptyControlSet: return "EmptyControlSet";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::DecodeError: return "DecodeError";
        case ErrorCode::DesignNotFound: return "DesignNotFound";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

std::int64_t IntVector::norm_inf() const noexcept {
    std::int64_t best = 0;
    for (auto c : coords_) {
        best = std::max(best, c < 0 ? -c : c);
    }
    return best;
}

std::int64_t IntVector::norm_one() const noexcept {
    std::int64_t sum = 0;
    for (auto c : coords_) {
        sum += c < 0 ? -c : c;
    }
    return sum;
}

bool IntVector::is_zero() const noexcept {
    return std::all_of(coords_.begin(), coords_.end(), [](auto c) { return c == 0; });
}

IntVector& IntVector::operator+=(const IntVector& other) {
    if (other.size() != size()) {
        throw Error(ErrorCode::DimensionMismatch, "vector dimensions differ");
    }
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        coords_[i] += other.coords_[i];
    }
    return *this;
}

IntVector& IntVector::operator-=(const IntVector& other) {
    if (other.size() != size()) {
        throw Error(ErrorCode::DimensionMismatch, "vector dimensions differ");
    }
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        coords_[i] -= other.coords_[i];
    }
    return *this;
}

std::string IntVector::key() const {
    std::string out;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += std::to_string(coords_[i]);
    }
    return out;
}

IntVector IntVector::from_key(const std::string& key) {
    std::vector<std::int64_t> coords;
    std::istringstream in(key);
    std::string part;
    while (std::getline(in, part, ',')) {
        char* end = nullptr;
        errno = 0;
        long long v = std::strtoll(part.c_str(), &end, 10);
        if (part.empty() || end == part.c_str() || *end != '\0' || errno != 0) {
            throw Error(ErrorCode::ParseError, "malformed vector key '" + key + "'");
        }
        coords.push_back(v);
    }
    if (coords.empty() || key.back() == ',') {
        throw Error(ErrorCode::ParseError, "malformed vector key '" + key + "'");
    }
    return IntVector(std::move(coords));
}

std::size_t IntVectorHash::operator()(const IntVector& v) const noexcept {
    // FNV-1a over the coordinates.
    std::uint64_t h = 1469598103934665603ULL;
    for (auto c : v.coords()) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 1099511628211ULL;
        h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
}

ControlSet::ControlSet(std::vector<IntVector> controls) : controls_(std::move(controls)) {
    if (controls_.empty()) {
        throw Error(ErrorCode::EmptyControlSet, "control set is empty");
    }
    const auto n = controls_.front().size();
    if (n == 0) {
        throw Error(ErrorCode::DimensionMismatch, "control vectors must have dimension >= 1");
    }
    PointSet seen;
    for (const auto& u : controls_) {
        if (u.size() != n) {
            throw Error(ErrorCode::DimensionMismatch, "control " + u.key() + " has wrong dimension");
        }
        if (!seen.insert(u).second) {
            throw Error(ErrorCode::DuplicateControl, "control " + u.key() + " listed twice");
        }
    }
}

std::size_t ControlSet::dimension() const noexcept {
    return controls_.empty() ? 0 : controls_.front().size();
}

std::ptrdiff_t ControlSet::index_of(const IntVector& u) const {
    auto it = std::find(controls_.begin(), controls_.end(), u);
    return it == controls_.end() ? -1 : it - controls_.begin();
}

SafeSet SafeSet::inf_ball(std::size_t n, std::int64_t k) {
    check_box_size(n, k);
    SafeSet s;
    s.kind_ = SafeSetKind::InfBall;
    s.n_ = n;
    s.k_ = k;
    IntVector cur(n);
    enumerate_box(n, k, cur, 0, s.points_, [](const IntVector&) { return true; });
    return s;
}

SafeSet SafeSet::one_ball(std::size_t n, std::int64_t k) {
    check_box_size(n, k);
    SafeSet s;
    s.kind_ = SafeSetKind::OneBall;
    s.n_ = n;
    s.k_ = k;
    IntVector cur(n);
    enumerate_box(n, k, cur, 0, s.points_, [k](const IntVector& x) { return x.norm_one() <= k; });
    s.build_index();
    return s;
}

SafeSet SafeSet::explicit_points(std::size_t n, std::vector<IntVector> points) {
    if (n == 0) {
        throw Error(ErrorCode::InvalidArgument, "safe set dimension must be at least 1");
    }
    SafeSet s;
    s.kind_ = SafeSetKind::Explicit;
    s.n_ = n;
    for (const auto& p : points) {
        if (p.size() != n) {
            throw Error(ErrorCode::DimensionMismatch, "safe point " + p.key() + " has wrong dimension");
        }
    }
    s.points_ = std::move(points);
    std::sort(s.points_.begin(), s.points_.end());
    auto dup = std::adjacent_find(s.points_.begin(), s.points_.end());
    if (dup != s.points_.end()) {
        throw Error(ErrorCode::InvalidArgument, "safe point " + dup->key() + " listed twice");
    }
    s.build_index();
    return s;
}

void SafeSet::build_index() {
    index_.clear();
    index_.reserve(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        index_.emplace(points_[i], i);
    }
}

std::ptrdiff_t SafeSet::index_of(const IntVector& x) const {
    if (x.size() != n_) {
        return -1;
    }
    if (kind_ == SafeSetKind::InfBall) {
        // Points are enumerated lexicographically, i.e. in mixed radix 2k+1.
        const std::int64_t radix = 2 * k_ + 1;
        std::int64_t idx = 0;
        for (auto c : x.coords()) {
            if (c < -k_ || c > k_) {
                return -1;
            }
            idx = idx * radix + (c + k_);
        }
        return static_cast<std::ptrdiff_t>(idx);
    }
    auto it = index_.find(x);
    return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

bool SafeSet::contains(const IntVector& x) const {
    if (x.size() != n_) {
        return false;
    }
    switch (kind_) {
        case SafeSetKind::InfBall: return x.norm_inf() <= k_;
        case SafeSetKind::OneBall: return x.norm_one() <= k_;
        case SafeSetKind::Explicit: return index_.contains(x);
    }
    return false;
}

bool Partition::all_cells_nonempty() const noexcept {
    return std::none_of(cells.begin(), cells.end(), [](const auto& c) { return c.empty(); });
}

Instance validate_instance(Instance raw) {
    if (raw.n == 0) {
        throw Error(ErrorCode::DimensionMismatch, "dimension n must be at least 1");
    }
    if (raw.controls.size() == 0) {
        throw Error(ErrorCode::EmptyControlSet, "control set is empty");
    }
    if (raw.controls.dimension() != raw.n) {
        throw Error(ErrorCode::DimensionMismatch, "controls have dimension " +
                                                      std::to_string(raw.controls.dimension()) +
                                                      ", expected " + std::to_string(raw.n));
    }
    if (raw.x0.size() != raw.n) {
        throw Error(ErrorCode::DimensionMismatch, "x0 has wrong dimension");
    }
    if (raw.safe.dimension() != raw.n) {
        throw Error(ErrorCode::DimensionMismatch, "safe set has wrong dimension");
    }
    if (raw.m < 1) {
        throw Error(ErrorCode::InvalidArgument, "m must be at least 1");
    }
    if (static_cast<std::size_t>(raw.m) > raw.controls.size()) {
        throw Error(ErrorCode::MTooLarge, "m = " + std::to_string(raw.m) + " exceeds |U| = " +
                                              std::to_string(raw.controls.size()));
    }
    if (!raw.safe.contains(raw.x0)) {
        throw Error(ErrorCode::X0NotSafe, "x0 = (" + raw.x0.key() + ") is not in the safe set");
    }
    return raw;
}

Partition labeling_to_partition(const Labeling& lab, int m) {
    if (m < 1) {
        throw Error(ErrorCode::InvalidArgument, "m must be at least 1");
    }
    Partition part;
    part.cells.resize(static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < lab.size(); ++i) {
        if (lab[i] < 0 || lab[i] >= m) {
            throw Error(ErrorCode::InvalidArgument, "label out of range for control " + std::to_string(i));
        }
        part.cells[static_cast<std::size_t>(lab[i])].push_back(i);
    }
    return part;
}

Labeling partition_to_labeling(const Partition& part, std::size_t control_count) {
    Labeling lab;
    lab.labels.assign(control_count, -1);
    for (std::size_t d = 0; d < part.cells.size(); ++d) {
        for (auto idx : part.cells[d]) {
            if (idx >= control_count || lab.labels[idx] != -1) {
                throw Error(ErrorCode::InvalidArgument, "partition cells overlap or index unknown controls");
            }
            lab.labels[idx] = static_cast<Label>(d);
        }
    }
    if (std::find(lab.labels.begin(), lab.labels.end(), -1) != lab.labels.end()) {
        throw Error(ErrorCode::InvalidArgument, "partition does not cover every control");
    }
    return lab;
}

}  // namespace resil
