#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <type_traits>
#include <vector>

#include "geneo/dice/die.hpp"
#include "geneo/error.hpp"

namespace geneo::dice {

/// Dataset file, little-endian: "GDIE", u32 version = 1, u32 n, u32 count,
/// u32 surface_len, then per die u8 label, u64 seed, f32[surface_len] values.
struct Dataset {
    std::uint32_t n = 0;
    std::vector<DieSample> samples;
};

namespace detail {

template <class T>
void put_le(std::ostream& out, T v) {
    unsigned char buf[sizeof(T)];
    std::uint64_t bits = 0;
    if constexpr (std::is_same_v<T, float>)
        bits = std::bit_cast<std::uint32_t>(v);
    else
        bits = static_cast<std::uint64_t>(v);
    for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(bits >> (8 * i));
    out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
T get_le(std::istream& in) {
    unsigned char buf[sizeof(T)];
    if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) throw FormatError("dataset file is truncated");
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    if constexpr (std::is_same_v<T, float>)
        return std::bit_cast<float>(static_cast<std::uint32_t>(bits));
    else
        return static_cast<T>(bits);
}

}  // namespace detail

inline void save_dataset(const std::string& path, const Dataset& ds) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path);
    const std::uint32_t len = ds.samples.empty() ? 0 : static_cast<std::uint32_t>(ds.samples.front().surface_values.size());
    out.write("GDIE", 4);
    detail::put_le<std::uint32_t>(out, 1);
    detail::put_le<std::uint32_t>(out, ds.n);
    detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(ds.samples.size()));
    detail::put_le<std::uint32_t>(out, len);
    for (const auto& s : ds.samples) {
        if (s.surface_values.size() != len) throw InvalidArgument("samples have different lengths");
        detail::put_le<std::uint8_t>(out, static_cast<std::uint8_t>(s.label));
        detail::put_le<std::uint64_t>(out, s.seed);
        for (float v : s.surface_values) detail::put_le<float>(out, v);
    }
    if (!out) throw FormatError("error writing " + path);
}

inline Dataset load_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, "GDIE", 4) != 0) throw FormatError(path + ": bad magic");
    if (const auto version = detail::get_le<std::uint32_t>(in); version != 1)
        throw FormatError(path + ": unsupported version " + std::to_string(version));
    Dataset ds;
    ds.n = detail::get_le<std::uint32_t>(in);
    const auto count = detail::get_le<std::uint32_t>(in);
    const auto len = detail::get_le<std::uint32_t>(in);
    if (ds.n >= 2) {
        const std::uint64_t n = ds.n, inner = n - 2;
        if (n * n * n - inner * inner * inner != len) throw FormatError(path + ": surface length does not match n");
    }
    ds.samples.resize(count);
    for (auto& s : ds.samples) {
        s.label = detail::get_le<std::uint8_t>(in);
        if (s.label != 1 && s.label != 2) throw FormatError(path + ": label must be 1 or 2");
        s.seed = detail::get_le<std::uint64_t>(in);
        s.surface_values.resize(len);
        for (float& v : s.surface_values) v = detail::get_le<float>(in);
    }
    if (in.peek() != std::char_traits<char>::eof()) throw FormatError(path + ": trailing bytes");
    return ds;
}

}  // namespace geneo::dice
