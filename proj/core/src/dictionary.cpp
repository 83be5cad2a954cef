#include "dictmon/dictionary.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "dictmon/errors.hpp"
#include "dictmon/rng.hpp"

namespace dictmon {

double Atom::norm() const {
    double s = 0.0;
    for (double v : waveform) s += v * v;
    return std::sqrt(s);
}

Atom normalize_atom(const Atom& atom) {
    const double n = atom.norm();
    if (!(n > 0.0) || !std::isfinite(n))
        throw NumericError("cannot normalize atom " + std::to_string(atom.id) +
                           ": zero or non-finite norm");
    Atom out = atom;
    for (double& v : out.waveform) v /= n;
    return out;
}

std::size_t Dictionary::max_atom_length() const {
    std::size_t n = 0;
    for (const auto& a : atoms) n = std::max(n, a.length());
    return n;
}

Dictionary init_dictionary(std::size_t m, std::size_t len, std::uint64_t seed) {
    if (m < 1) throw DataError("dictionary needs at least one atom");
    if (len < 2) throw DataError("atom length must be at least 2");
    Dictionary dict;
    dict.atoms.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        CounterRng rng(seed, /*stream=*/i + 1);
        Atom atom;
        atom.id = static_cast<std::uint32_t>(i);
        atom.waveform.resize(len);
        // A zero-norm draw is astronomically unlikely; redraw if it happens.
        for (int attempt = 0; attempt < 8; ++attempt) {
            for (double& v : atom.waveform) v = rng.next_normal();
            if (atom.norm() > 0.0) break;
        }
        dict.atoms.push_back(normalize_atom(atom));
    }
    return dict;
}

Snapshot take_snapshot(const Dictionary& dictionary, double stream_time) {
    return Snapshot{dictionary, stream_time};
}

namespace {

constexpr char kMagic[4] = {'D', 'I', 'C', 'T'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ofstream& out, std::uint32_t v) {
    static_assert(std::endian::native == std::endian::little);
    out.write(reinterpret_cast<const char*>(&v), 4);
}

std::uint32_t get_u32(std::ifstream& in, const std::filesystem::path& path) {
    std::uint32_t v;
    in.read(reinterpret_cast<char*>(&v), 4);
    if (!in) throw DataError("truncated dictionary file '" + path.string() + "'");
    return v;
}

} // namespace

void save_dictionary(const Dictionary& dictionary, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write dictionary '" + path.string() + "'");
    out.write(kMagic, 4);
    put_u32(out, kVersion);
    put_u32(out, static_cast<std::uint32_t>(dictionary.atoms.size()));
    for (const auto& atom : dictionary.atoms) {
        put_u32(out, static_cast<std::uint32_t>(atom.waveform.size()));
        out.write(reinterpret_cast<const char*>(atom.waveform.data()),
                  static_cast<std::streamsize>(atom.waveform.size() * sizeof(double)));
    }
    if (!out) throw DataError("write failed for dictionary '" + path.string() + "'");
}

Dictionary load_dictionary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open dictionary '" + path.string() + "'");
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw DataError("'" + path.string() + "' is not a dictionary file");
    const std::uint32_t version = get_u32(in, path);
    if (version != kVersion)
        throw DataError("unsupported dictionary version " + std::to_string(version));
    const std::uint32_t m = get_u32(in, path);
    if (m == 0) throw DataError("dictionary file '" + path.string() + "' has no atoms");
    Dictionary dict;
    dict.atoms.reserve(m);
    for (std::uint32_t i = 0; i < m; ++i) {
        const std::uint32_t len = get_u32(in, path);
        if (len < 2) throw DataError("dictionary file has an atom shorter than 2 samples");
        Atom atom;
        atom.id = i;
        atom.waveform.resize(len);
        in.read(reinterpret_cast<char*>(atom.waveform.data()),
                static_cast<std::streamsize>(len * sizeof(double)));
        if (!in) throw DataError("truncated dictionary file '" + path.string() + "'");
        for (double v : atom.waveform)
            if (!std::isfinite(v))
                throw DataError("non-finite atom sample in '" + path.string() + "'");
        dict.atoms.push_back(std::move(atom));
    }
    return dict;
}

} // namespace dictmon
