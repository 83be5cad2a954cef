#ifndef DICTMON_DICTIONARY_HPP
#define DICTMON_DICTIONARY_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

namespace dictmon {

/// Unit-norm compact waveform. `id` equals the atom's position in its
/// dictionary and is stable across updates.
struct Atom {
    std::vector<double> waveform;
    std::uint32_t id = 0;

    std::size_t length() const { return waveform.size(); }
    double norm() const;
};

/// Returns the unit-norm copy; direction preserved. Throws NumericError on
/// zero or non-finite norm.
Atom normalize_atom(const Atom& atom);

struct DictionaryMeta {
    std::uint64_t update_count = 0;     // apply_update calls so far
    double created_stream_time = 0.0;   // stream seconds when initialized
};

struct Dictionary {
    std::vector<Atom> atoms;
    DictionaryMeta meta;

    std::size_t size() const { return atoms.size(); }
    std::size_t max_atom_length() const;
};

/// M atoms of length `len`, i.i.d. standard normal then L2-normalized.
/// Fully determined by (m, len, seed).
Dictionary init_dictionary(std::size_t m, std::size_t len, std::uint64_t seed);

/// Immutable time-stamped deep copy used for lagged drift comparison.
struct Snapshot {
    Dictionary dictionary;
    double stream_time = 0.0;
};

Snapshot take_snapshot(const Dictionary& dictionary, double stream_time);

/// File format: magic "DICT", u32 version, u32 M, then per atom a u32
/// length followed by f64le samples. All little-endian. Round-trips
/// bit-exactly.
void save_dictionary(const Dictionary& dictionary, const std::filesystem::path& path);
Dictionary load_dictionary(const std::filesystem::path& path);

} // namespace dictmon

#endif
