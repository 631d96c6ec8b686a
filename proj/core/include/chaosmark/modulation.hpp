#pragma once

// Spread-spectrum modulations written as initial strategies of G.
//
// Each scheme turns (host x, message m, carriers u^i) into Nc strategy terms
// c_i * u^i followed by a zero tail; the stego vector is the media component
// after Nc iterations, i.e. y = x + sum_i c_i u^i.
//
//   SS : c_i = gamma * (-1)^{m_i}
//   ISS: c_i = alpha * (-1)^{m_i} - lambda * <x,u^i> / |u^i|^2
//   NW : c_i = -(1 + eta * (-1)^{m_i} * sign<x,u^i>) * <x,u^i> / |u^i|^2

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "chaosmark/phase_space.hpp"

namespace chaosmark {

enum class Scheme { SS, ISS, NW };

std::string_view to_string(Scheme scheme);
/// Accepts "ss", "iss", "nw" (case-insensitive).
Scheme parse_scheme(std::string_view name);

struct SchemeConfig {
    std::size_t nv = 1;
    std::size_t nc = 1;
    double gamma = 1.0;
    double alpha = 1.0;
    double lambda = 1.0;
    double eta = 1.0;
    /// Bound N on strategy term components.
    double bound_n = 1e6;
    std::uint64_t key = 0;
    bool orthonormalize = true;

    void validate() const;
};

struct Message {
    std::vector<std::uint8_t> bits;

    std::size_t size() const noexcept { return bits.size(); }
    /// `text` is a string of '0'/'1' characters.
    static Message from_bit_string(std::string_view text);
    std::string to_bit_string() const;
    Message complement() const;
    friend bool operator==(const Message&, const Message&) = default;
};

struct CarrierSet {
    std::vector<VectorN> carriers;

    std::size_t size() const noexcept { return carriers.size(); }
    const VectorN& operator[](std::size_t i) const { return carriers[i]; }
};

/// Nc carriers with standard-normal components drawn from a counter-based
/// generator keyed by cfg.key; Gram-Schmidt orthonormalized on request.
/// Bit-identical for identical (key, nv, nc, orthonormalize).
CarrierSet generate_carriers(const SchemeConfig& cfg);

VectorN ss_watermark(const Message& m, const CarrierSet& c, const SchemeConfig& cfg);

Strategy ss_strategy(const Message& m, const CarrierSet& c, const SchemeConfig& cfg);
Strategy iss_strategy(const VectorN& x, const Message& m, const CarrierSet& c, const SchemeConfig& cfg);
Strategy nw_strategy(const VectorN& x, const Message& m, const CarrierSet& c, const SchemeConfig& cfg);

Strategy make_strategy(Scheme scheme, const VectorN& x, const Message& m, const CarrierSet& c,
                       const SchemeConfig& cfg);

/// Media component of G^Nc applied to (strategy, x).
VectorN embed(const VectorN& x, const Message& m, const CarrierSet& c, const SchemeConfig& cfg,
              Scheme scheme);

struct DecodeResult {
    Message message;
    /// Bit positions whose correlation was exactly zero (decoded as 0).
    std::vector<std::size_t> ties;
};

/// Correlation sign detector. SS/ISS: bit 0 iff <y,u^i> > 0. NW: bit 0 iff <y,u^i> < 0.
DecodeResult decode(const VectorN& y, const CarrierSet& c, const SchemeConfig& cfg, Scheme scheme);

}  // namespace chaosmark
