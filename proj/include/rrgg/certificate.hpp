#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rrgg/geometry.hpp"
#include "rrgg/process.hpp"

namespace rrgg {

/// The spanning rainbow structure being sought.
enum class Structure { HamiltonCycle, PerfectMatching };

const char* to_string(Structure s);
/// Accepts "HC" / "PM" (case-insensitive). Throws std::invalid_argument otherwise.
Structure parse_structure(std::string_view text);

struct CertificateEdge {
    Vertex i;
    Vertex j;
    Colour colour;
    double length;
};

/// HC: n edges in cycle order; PM: n/2 disjoint edges. All lengths <= radius.
struct RainbowCertificate {
    Structure kind = Structure::HamiltonCycle;
    std::vector<CertificateEdge> edges;
    double radius = 0.0;
};

/// Structured failure: which stage gave up and on which piece.
struct BuildFailure {
    std::string stage;
    std::string piece;
    std::string detail;
};

/// Value or BuildFailure.
template <class T>
class Result {
public:
    Result(T value) : v_(std::move(value)) {}
    Result(BuildFailure failure) : v_(std::move(failure)) {}

    bool ok() const noexcept { return v_.index() == 0; }
    explicit operator bool() const noexcept { return ok(); }

    T& value() { return std::get<0>(v_); }
    const T& value() const { return std::get<0>(v_); }
    T& operator*() { return value(); }
    const T& operator*() const { return value(); }
    T* operator->() { return &value(); }
    const T* operator->() const { return &value(); }

    const BuildFailure& failure() const { return std::get<1>(v_); }

private:
    std::variant<T, BuildFailure> v_;
};

}  // namespace rrgg
