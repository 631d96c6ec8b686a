#include "chaosmark/modulation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace chaosmark {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Uniform in (0, 1], 53-bit resolution.
double counter_uniform(std::uint64_t key, std::uint64_t counter) {
    const std::uint64_t bits = splitmix64(splitmix64(key) ^ splitmix64(counter + 0x632BE59BD9B4E019ULL));
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

// Box-Muller on two counter draws; one normal per index.
double counter_normal(std::uint64_t key, std::uint64_t index) {
    const double u1 = counter_uniform(key, 2 * index);
    const double u2 = counter_uniform(key, 2 * index + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double sign_of(std::uint8_t bit) { return bit == 0 ? 1.0 : -1.0; }

void check_inputs(const Message& m, const CarrierSet& c, const SchemeConfig& cfg) {
    cfg.validate();
    if (m.size() == 0) {
        throw PreconditionError("message must carry at least one bit");
    }
    if (m.size() != cfg.nc) {
        throw PreconditionError("message length " + std::to_string(m.size()) + " does not match nc = " +
                                std::to_string(cfg.nc));
    }
    if (c.size() != cfg.nc) {
        throw DimensionError("carrier count does not match nc");
    }
    for (const auto& u : c.carriers) {
        if (u.size() != cfg.nv) {
            throw DimensionError("carrier dimension does not match nv");
        }
    }
}

Strategy bounded_strategy(std::vector<VectorN> terms, const SchemeConfig& cfg) {
    Strategy s = Strategy::with_zero_tail(std::move(terms));
    try {
        s.check_bounds(cfg.bound_n);
    } catch (const BoundError& e) {
        throw BoundError(std::string("inconsistent modulation amplitude and bound N: ") + e.what());
    }
    return s;
}

}  // namespace

std::string_view to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::SS: return "ss";
        case Scheme::ISS: return "iss";
        case Scheme::NW: return "nw";
    }
    return "ss";
}

Scheme parse_scheme(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (lower == "ss") return Scheme::SS;
    if (lower == "iss") return Scheme::ISS;
    if (lower == "nw") return Scheme::NW;
    throw ParseError("unknown scheme '" + std::string(name) + "' (expected ss, iss or nw)");
}

void SchemeConfig::validate() const {
    if (nv < 1) throw PreconditionError("SchemeConfig: nv must be >= 1");
    if (nc < 1) throw PreconditionError("SchemeConfig: nc must be >= 1");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw PreconditionError("SchemeConfig: gamma must be > 0");
    if (!(eta > 0.0) || !std::isfinite(eta)) throw PreconditionError("SchemeConfig: eta must be > 0");
    if (!std::isfinite(alpha)) throw PreconditionError("SchemeConfig: alpha must be finite");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw PreconditionError("SchemeConfig: lambda must lie in [0, 1]");
    if (!(bound_n > 0.0) || !std::isfinite(bound_n)) throw PreconditionError("SchemeConfig: bound_n must be > 0");
}

Message Message::from_bit_string(std::string_view text) {
    Message m;
    m.bits.reserve(text.size());
    for (char ch : text) {
        if (ch != '0' && ch != '1') {
            throw ParseError("message bit string may only contain '0' and '1'");
        }
        m.bits.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return m;
}

std::string Message::to_bit_string() const {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

Message Message::complement() const {
    Message m = *this;
    for (auto& b : m.bits) b = b ? 0 : 1;
    return m;
}

CarrierSet generate_carriers(const SchemeConfig& cfg) {
    cfg.validate();
    if (cfg.orthonormalize && cfg.nc > cfg.nv) {
        throw PreconditionError("cannot orthonormalize " + std::to_string(cfg.nc) + " carriers in dimension " +
                                std::to_string(cfg.nv));
    }
    std::vector<std::vector<double>> raw(cfg.nc, std::vector<double>(cfg.nv));
    for (std::size_t i = 0; i < cfg.nc; ++i) {
        for (std::size_t j = 0; j < cfg.nv; ++j) {
            raw[i][j] = counter_normal(cfg.key, static_cast<std::uint64_t>(i) * cfg.nv + j);
        }
    }
    if (cfg.orthonormalize) {
        // Modified Gram-Schmidt, with one re-orthogonalization pass.
        for (std::size_t i = 0; i < cfg.nc; ++i) {
            auto& v = raw[i];
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t k = 0; k < i; ++k) {
                    double p = 0.0;
                    for (std::size_t j = 0; j < cfg.nv; ++j) p += v[j] * raw[k][j];
                    for (std::size_t j = 0; j < cfg.nv; ++j) v[j] -= p * raw[k][j];
                }
            }
            double norm = 0.0;
            for (double a : v) norm += a * a;
            norm = std::sqrt(norm);
            if (!(norm > 1e-12)) {
                throw PreconditionError("carrier " + std::to_string(i) + " is linearly dependent on earlier carriers");
            }
            for (double& a : v) a /= norm;
        }
    }
    CarrierSet out;
    out.carriers.reserve(cfg.nc);
    for (auto& v : raw) {
        VectorN u(std::move(v));
        if (u.max_abs() == 0.0) {
            throw PreconditionError("generated a zero carrier");
        }
        out.carriers.push_back(std::move(u));
    }
    return out;
}

VectorN ss_watermark(const Message& m, const CarrierSet& c, const SchemeConfig& cfg) {
    check_inputs(m, c, cfg);
    VectorN w = VectorN::zeros(cfg.nv);
    for (std::size_t i = 0; i < cfg.nc; ++i) {
        w += (cfg.gamma * sign_of(m.bits[i])) * c[i];
    }
    return w;
}

Strategy ss_strategy(const Message& m, const CarrierSet& c, const SchemeConfig& cfg) {
    check_inputs(m, c, cfg);
    std::vector<VectorN> terms;
    terms.reserve(cfg.nc);
    for (std::size_t i = 0; i < cfg.nc; ++i) {
        terms.push_back((sign_of(m.bits[i]) * cfg.gamma) * c[i]);
    }
    return bounded_strategy(std::move(terms), cfg);
}

Strategy iss_strategy(const VectorN& x, const Message& m, const CarrierSet& c, const SchemeConfig& cfg) {
    check_inputs(m, c, cfg);
    if (x.size() != cfg.nv) throw DimensionError("host dimension does not match nv");
    std::vector<VectorN> terms;
    terms.reserve(cfg.nc);
    for (std::size_t i = 0; i < cfg.nc; ++i) {
        const double norm2 = squared_norm(c[i]);
        if (norm2 == 0.0) throw PreconditionError("ISS: carrier " + std::to_string(i) + " has zero norm");
        const double coeff = sign_of(m.bits[i]) * cfg.alpha - cfg.lambda * dot(x, c[i]) / norm2;
        terms.push_back(coeff * c[i]);
    }
    return bounded_strategy(std::move(terms), cfg);
}

Strategy nw_strategy(const VectorN& x, const Message& m, const CarrierSet& c, const SchemeConfig& cfg) {
    check_inputs(m, c, cfg);
    if (x.size() != cfg.nv) throw DimensionError("host dimension does not match nv");
    std::vector<VectorN> terms;
    terms.reserve(cfg.nc);
    for (std::size_t i = 0; i < cfg.nc; ++i) {
        const double norm2 = squared_norm(c[i]);
        if (norm2 == 0.0) throw PreconditionError("NW: carrier " + std::to_string(i) + " has zero norm");
        const double proj = dot(x, c[i]);
        if (proj == 0.0) {
            throw PreconditionError("NW: host projection on carrier " + std::to_string(i) +
                                    " is zero, modulation sign undefined");
        }
        const double sgn = proj > 0.0 ? 1.0 : -1.0;
        const double coeff = -(1.0 + cfg.eta * sign_of(m.bits[i]) * sgn) * proj / norm2;
        terms.push_back(coeff * c[i]);
    }
    return bounded_strategy(std::move(terms), cfg);
}

Strategy make_strategy(Scheme scheme, const VectorN& x, const Message& m, const CarrierSet& c,
                       const SchemeConfig& cfg) {
    switch (scheme) {
        case Scheme::SS: return ss_strategy(m, c, cfg);
        case Scheme::ISS: return iss_strategy(x, m, c, cfg);
        case Scheme::NW: return nw_strategy(x, m, c, cfg);
    }
    throw PreconditionError("unknown scheme");
}

VectorN embed(const VectorN& x, const Message& m, const CarrierSet& c, const SchemeConfig& cfg, Scheme scheme) {
    if (x.size() != cfg.nv) throw DimensionError("host dimension does not match nv");
    PhasePoint start(make_strategy(scheme, x, m, c, cfg), x);
    return iterate_g(start, cfg.nc).media();
}

DecodeResult decode(const VectorN& y, const CarrierSet& c, const SchemeConfig& cfg, Scheme scheme) {
    if (y.size() != cfg.nv) throw DimensionError("stego dimension does not match nv");
    if (c.size() != cfg.nc) throw DimensionError("carrier count does not match nc");
    DecodeResult out;
    out.message.bits.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double p = dot(y, c[i]);
        if (p == 0.0) {
            out.ties.push_back(i);
            out.message.bits.push_back(0);
            continue;
        }
        const bool zero_bit = scheme == Scheme::NW ? p < 0.0 : p > 0.0;
        out.message.bits.push_back(zero_bit ? 0 : 1);
    }
    return out;
}

}  // namespace chaosmark
