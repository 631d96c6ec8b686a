#include "cli/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace chaosmark::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string lower_extension(const fs::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return ext;
}

double parse_double(std::string_view token, const fs::path& path, std::size_t line) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ParseError(path.string() + ":" + std::to_string(line) + ": not a number: '" + std::string(token) + "'");
    }
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

VectorN read_csv_vector(const fs::path& path, const std::string& text) {
    std::vector<double> data;
    std::istringstream in(text);
    std::size_t line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        const auto cell = trim(line);
        if (cell.empty() || cell.front() == '#') continue;
        if (cell.find(',') != std::string_view::npos) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected a single column");
        }
        // Tolerate a non-numeric header on the first data line.
        if (data.empty() && !(std::isdigit(static_cast<unsigned char>(cell.front())) || cell.front() == '-' ||
                              cell.front() == '+' || cell.front() == '.')) {
            continue;
        }
        data.push_back(parse_double(cell, path, line_no));
    }
    if (data.empty()) throw ParseError(path.string() + ": no values");
    return VectorN(std::move(data));
}

VectorN read_json_vector(const fs::path& path, const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": invalid JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("data") || !j["data"].is_array()) {
        throw ParseError(path.string() + ": expected an object with a \"data\" array");
    }
    std::vector<double> data;
    for (const auto& v : j["data"]) {
        if (!v.is_number()) throw ParseError(path.string() + ": \"data\" must hold numbers");
        data.push_back(v.get<double>());
    }
    if (j.contains("nv")) {
        if (!j["nv"].is_number_unsigned() || j["nv"].get<std::size_t>() != data.size()) {
            throw DimensionError(path.string() + ": \"nv\" does not match the length of \"data\"");
        }
    }
    if (data.empty()) throw ParseError(path.string() + ": empty \"data\"");
    return VectorN(std::move(data));
}

VectorN read_pgm_vector(const fs::path& path, const std::string& bytes) {
    std::size_t pos = 0;
    auto next_token = [&]() {
        while (pos < bytes.size()) {
            if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
                ++pos;
            } else {
                break;
            }
        }
        const std::size_t start = pos;
        while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
        if (start == pos) throw ParseError(path.string() + ": truncated PGM header");
        return bytes.substr(start, pos - start);
    };
    auto next_uint = [&]() {
        const std::string t = next_token();
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || ptr != t.data() + t.size()) throw ParseError(path.string() + ": bad PGM header");
        return v;
    };
    const std::string magic = next_token();
    if (magic != "P2" && magic != "P5") throw ParseError(path.string() + ": only P2/P5 PGM is supported");
    const std::size_t width = next_uint();
    const std::size_t height = next_uint();
    const std::size_t maxval = next_uint();
    if (width == 0 || height == 0 || maxval == 0 || maxval > 65535) {
        throw ParseError(path.string() + ": bad PGM dimensions");
    }
    const std::size_t count = width * height;
    std::vector<double> data;
    data.reserve(count);
    if (magic == "P2") {
        for (std::size_t i = 0; i < count; ++i) data.push_back(static_cast<double>(next_uint()));
    } else {
        ++pos;  // single whitespace after maxval
        const std::size_t depth = maxval > 255 ? 2 : 1;
        if (bytes.size() < pos + count * depth) throw ParseError(path.string() + ": truncated PGM raster");
        for (std::size_t i = 0; i < count; ++i) {
            const auto b0 = static_cast<unsigned char>(bytes[pos + i * depth]);
            double v = b0;
            if (depth == 2) v = b0 * 256.0 + static_cast<unsigned char>(bytes[pos + i * depth + 1]);
            data.push_back(v);
        }
    }
    return VectorN(std::move(data));
}

std::vector<VectorN> terms_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string("phase point: ") + what + " must be an array of vectors");
    std::vector<VectorN> terms;
    for (const auto& t : j) {
        if (!t.is_array()) throw ParseError(std::string("phase point: ") + what + " entries must be arrays");
        terms.emplace_back(t.get<std::vector<double>>());
    }
    return terms;
}

}  // namespace

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const fs::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write '" + path.string() + "'");
    }
    out << contents;
    if (!out) throw IoError("error writing '" + path.string() + "'");
}

VectorN read_vector(const fs::path& path) {
    const std::string text = read_text_file(path);
    const std::string ext = lower_extension(path);
    if (ext == ".csv" || ext == ".txt") return read_csv_vector(path, text);
    if (ext == ".pgm") return read_pgm_vector(path, text);
    return read_json_vector(path, text);
}

void write_vector(const fs::path& path, const VectorN& v) {
    const std::string ext = lower_extension(path);
    if (ext == ".csv" || ext == ".txt") {
        std::string out;
        for (double c : v.components()) {
            out += format_double(c);
            out += '\n';
        }
        write_text_file(path, out);
        return;
    }
    ordered_json j;
    j["nv"] = v.size();
    j["data"] = to_json(v);
    write_text_file(path, j.dump(2) + "\n");
}

Message parse_message(std::string_view text) {
    if (text.starts_with("0x") || text.starts_with("0X")) {
        Message m;
        for (char ch : text.substr(2)) {
            int digit = 0;
            if (ch >= '0' && ch <= '9') {
                digit = ch - '0';
            } else if (ch >= 'a' && ch <= 'f') {
                digit = ch - 'a' + 10;
            } else if (ch >= 'A' && ch <= 'F') {
                digit = ch - 'A' + 10;
            } else {
                throw ParseError("invalid hex digit in message");
            }
            for (int b = 3; b >= 0; --b) m.bits.push_back(static_cast<std::uint8_t>((digit >> b) & 1));
        }
        if (m.bits.empty()) throw ParseError("empty message");
        return m;
    }
    if (text.starts_with("0b")) text.remove_prefix(2);
    Message m = Message::from_bit_string(trim(text));
    if (m.bits.empty()) throw ParseError("empty message");
    return m;
}

ordered_json to_json(const VectorN& v) {
    ordered_json arr = ordered_json::array();
    for (double c : v.components()) arr.push_back(c);
    return arr;
}

ordered_json to_json(const Strategy& s) {
    ordered_json prefix = ordered_json::array();
    for (const auto& t : s.prefix()) prefix.push_back(to_json(t));
    ordered_json tail;
    if (s.tail_kind() == TailKind::Zero) {
        tail["kind"] = "zero";
    } else {
        tail["kind"] = "periodic";
        ordered_json terms = ordered_json::array();
        for (const auto& t : s.period()) terms.push_back(to_json(t));
        tail["terms"] = std::move(terms);
    }
    ordered_json j;
    j["prefix"] = std::move(prefix);
    j["tail"] = std::move(tail);
    return j;
}

ordered_json to_json(const PhasePoint& x) {
    ordered_json j;
    j["nv"] = x.nv();
    j["media"] = to_json(x.media());
    j["strategy"] = to_json(x.strategy());
    return j;
}

PhasePoint phase_point_from_json(const json& j) {
    try {
        if (!j.is_object() || !j.contains("media") || !j.contains("strategy")) {
            throw ParseError("phase point must have \"media\" and \"strategy\"");
        }
        VectorN media(j.at("media").get<std::vector<double>>());
        const json& s = j.at("strategy");
        std::vector<VectorN> prefix = s.contains("prefix") ? terms_from_json(s.at("prefix"), "prefix")
                                                           : std::vector<VectorN>{};
        const json& tail = s.at("tail");
        const std::string kind = tail.at("kind").get<std::string>();
        Strategy strategy = Strategy::zero(media.size());
        if (kind == "zero") {
            if (!prefix.empty()) strategy = Strategy::with_zero_tail(std::move(prefix));
        } else if (kind == "periodic") {
            strategy = Strategy::with_periodic_tail(std::move(prefix), terms_from_json(tail.at("terms"), "tail terms"));
        } else {
            throw ParseError("phase point tail kind must be \"zero\" or \"periodic\"");
        }
        if (j.contains("nv") && j.at("nv").get<std::size_t>() != media.size()) {
            throw DimensionError("phase point \"nv\" does not match the media length");
        }
        return PhasePoint(std::move(strategy), std::move(media));
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed phase point: ") + e.what());
    }
}

PhasePoint read_phase_point(const fs::path& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": invalid JSON: " + e.what());
    }
    return phase_point_from_json(j);
}

PhasePoint random_phase_point(std::size_t nv, double bound_n, std::size_t prefix_len, std::mt19937_64& gen) {
    auto uniform = [&]() { return (2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0) * bound_n; };
    auto term = [&]() {
        std::vector<double> c(nv);
        for (double& v : c) v = uniform();
        return VectorN(std::move(c));
    };
    std::vector<VectorN> prefix;
    for (std::size_t k = 0; k < prefix_len; ++k) prefix.push_back(term());
    std::vector<VectorN> period;
    const std::size_t p = 1 + static_cast<std::size_t>(gen() % 3);
    for (std::size_t k = 0; k < p; ++k) period.push_back(term());
    return PhasePoint(Strategy::with_periodic_tail(std::move(prefix), std::move(period)), term());
}

std::string key_fingerprint(std::uint64_t key) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (int i = 0; i < 8; ++i) {
        h ^= (key >> (8 * i)) & 0xFFU;
        h *= 0x100000001b3ULL;
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
        h >>= 4;
    }
    return out;
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

}  // namespace chaosmark::cli
