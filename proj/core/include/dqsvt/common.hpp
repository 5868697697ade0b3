#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace dqsvt {

using Complex = std::complex<double>;
using Index = std::size_t;

/// Random engine used by every sampler. Engines are always passed in by the
/// caller; no module stores one.
using Rng = std::mt19937_64;

// Error hierarchy. Every failure the library reports derives from Error so
// the CLI can map it to an exit code in one place.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RangeError : Error {
    using Error::Error;
};
struct InvalidInput : Error {
    using Error::Error;
};
struct ShapeError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct ConstructionError : Error {
    using Error::Error;
};
struct SizeError : Error {
    using Error::Error;
};
struct InvalidSampler : Error {
    using Error::Error;
};
struct InconsistencyError : Error {
    using Error::Error;
};
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t line)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

    /// Same error with `context` (typically a file name) prefixed.
    [[nodiscard]] static ParseError in_context(const std::string& context, const ParseError& e) {
        return ParseError(Raw{}, context + ": " + e.what(), e.line());
    }

  private:
    struct Raw {};
    ParseError(Raw, const std::string& what, std::size_t line) : Error(what), line_(line) {}

    std::size_t line_;
};

/// splitmix64 finalizer; used to derive independent per-task seeds from a
/// single run seed.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return mix_seed(seed ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

/// Uniform double in [0, 1) from the top 53 bits of one engine draw. Avoids
/// std::uniform_real_distribution so streams are identical across standard
/// libraries.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace dqsvt
