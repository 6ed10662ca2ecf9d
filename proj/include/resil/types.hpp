#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace resil {

enum class ErrorCode {
    InvalidArgument = 1,
    ParseError,
    DimensionMismatch,
    DuplicateControl,
    X0NotSafe,
    MTooLarge,
    EmptyControlSet,
    TooLarge,
    CapExceeded,
    PreconditionViolated,
    DecodeError,
    DesignNotFound,
    ConfigError,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

/// A point or displacement on the integer lattice Z^n.
class IntVector {
  public:
    IntVector() = default;
    explicit IntVector(std::size_t n) : coords_(n, 0) {}
    explicit IntVector(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}
    IntVector(std::initializer_list<std::int64_t> coords) : coords_(coords) {}

    [[nodiscard]] std::size_t size() const noexcept { return coords_.size(); }
    [[nodiscard]] std::int64_t operator[](std::size_t i) const { return coords_[i]; }
    std::int64_t& operator[](std::size_t i) { return coords_[i]; }
    [[nodiscard]] std::span<const std::int64_t> coords() const noexcept { return coords_; }

    [[nodiscard]] std::int64_t norm_inf() const noexcept;
    [[nodiscard]] std::int64_t norm_one() const noexcept;
    [[nodiscard]] bool is_zero() const noexcept;

    IntVector& operator+=(const IntVector& other);
    IntVector& operator-=(const IntVector& other);
    friend IntVector operator+(IntVector a, const IntVector& b) { return a += b; }
    friend IntVector operator-(IntVector a, const IntVector& b) { return a -= b; }

    friend bool operator==(const IntVector&, const IntVector&) = default;
    friend auto operator<=>(const IntVector&, const IntVector&) = default;

    /// Comma-joined coordinates, e.g. "1,-1". Used as JSON object keys.
    [[nodiscard]] std::string key() const;
    static IntVector from_key(const std::string& key);

  private:
    std::vector<std::int64_t> coords_;
};

struct IntVectorHash {
    std::size_t operator()(const IntVector& v) const noexcept;
};

using PointSet = std::unordered_set<IntVector, IntVectorHash>;

/// Ordered, duplicate-free finite control set U. The order matters: the
/// greedy labeler and every tie-break walk controls in this order.
class ControlSet {
  public:
    ControlSet() = default;
    /// Throws EmptyControlSet, DimensionMismatch or DuplicateControl.
    explicit ControlSet(std::vector<IntVector> controls);

    [[nodiscard]] std::size_t size() const noexcept { return controls_.size(); }
    [[nodiscard]] std::size_t dimension() const noexcept;
    [[nodiscard]] const IntVector& operator[](std::size_t i) const { return controls_[i]; }
    [[nodiscard]] const std::vector<IntVector>& vectors() const noexcept { return controls_; }
    [[nodiscard]] auto begin() const noexcept { return controls_.begin(); }
    [[nodiscard]] auto end() const noexcept { return controls_.end(); }

    /// Index of `u` in the set, or -1.
    [[nodiscard]] std::ptrdiff_t index_of(const IntVector& u) const;

  private:
    std::vector<IntVector> controls_;
};

enum class SafeSetKind { InfBall, OneBall, Explicit };

/// Finite safe set S, materialized eagerly and kept in lexicographic order.
class SafeSet {
  public:
    SafeSet() = default;

    static SafeSet inf_ball(std::size_t n, std::int64_t k);
    static SafeSet one_ball(std::size_t n, std::int64_t k);
    /// Duplicate points are an InvalidArgument.
    static SafeSet explicit_points(std::size_t n, std::vector<IntVector> points);

    [[nodiscard]] SafeSetKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::int64_t radius() const noexcept { return k_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return n_; }
    [[nodiscard]] const std::vector<IntVector>& points() const noexcept { return points_; }
    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] bool contains(const IntVector& x) const;
    /// Position of x in points(), or -1.
    [[nodiscard]] std::ptrdiff_t index_of(const IntVector& x) const;

  private:
    void build_index();

    SafeSetKind kind_ = SafeSetKind::Explicit;
    std::size_t n_ = 0;
    std::int64_t k_ = 0;
    std::vector<IntVector> points_;
    // Boxes are indexed arithmetically; other kinds use this map.
    std::unordered_map<IntVector, std::size_t, IntVectorHash> index_;
};

/// Labels are 0-based internally (label d in [m] is stored as d-1); the
/// file formats and C API use 1-based labels.
using Label = int;

struct Labeling {
    std::vector<Label> labels;  // one entry per control, in control order

    [[nodiscard]] std::size_t size() const noexcept { return labels.size(); }
    Label operator[](std::size_t i) const { return labels[i]; }
};

struct Partition {
    std::vector<std::vector<std::size_t>> cells;  // control indices per label

    [[nodiscard]] std::size_t label_count() const noexcept { return cells.size(); }
    [[nodiscard]] bool all_cells_nonempty() const noexcept;
};

struct Instance {
    std::size_t n = 0;
    IntVector x0;
    ControlSet controls;
    int m = 1;
    SafeSet safe;
};

/// Checks every cross-field invariant; throws Error on the first violation.
Instance validate_instance(Instance raw);

/// Cell d collects every control labeled d. Throws InvalidArgument on labels
/// outside [0, m).
Partition labeling_to_partition(const Labeling& lab, int m);
/// Inverse of labeling_to_partition. Throws InvalidArgument unless the cells
/// cover control indices 0..control_count-1 exactly once.
Labeling partition_to_labeling(const Partition& part, std::size_t control_count);

}  // namespace resil
