#pragma once

// On-disk formats.
//
// A dictionary is a directory holding
//   manifest.json   metadata and the SHA-256 of atoms.bin
//   atoms.bin       32-byte header, then little-endian f64 (re, im) pairs,
//                   atom-major (atom 0 entries t = 0..p-1, then atom 1, ...)
//   provenance.csv  atom,group,character,shift_tau,shift_w,base_atom
//
// A signal file is a 32-byte header followed by p little-endian f64 pairs.
// Both headers are: 8-byte magic, u32 version, u32 prime, u64 count,
// u64 group count (0 for signals), all little-endian.

#include <filesystem>
#include <string>

#include "oscdict/dictionary.hpp"
#include "oscdict/linalg.hpp"

namespace oscdict {

inline constexpr char kPhaseConvention[] = "dominant-entry-real-positive/v1";
inline constexpr std::uint32_t kFormatVersion = 1;

struct Manifest {
  std::uint32_t prime = 0;
  DictionaryKind kind = DictionaryKind::heisenberg;
  std::uint64_t atom_count = 0;
  std::uint64_t group_count = 0;
  std::uint32_t generator = 0;
  std::string phase_convention = kPhaseConvention;
  std::string build_timestamp;
  std::string blob_sha256;
  std::uint64_t blob_bytes = 0;
};

/// Serialized blob bytes for a dictionary (header + atoms).
std::string encode_atoms(const Dictionary& dict);
/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

std::string manifest_json(const Manifest& m);
Manifest parse_manifest(const std::string& text);
std::string provenance_csv(const Dictionary& dict);

/// Writes the three files, each via temp file + rename. Throws IoError.
Manifest write_dictionary(const std::filesystem::path& dir,
                          const Dictionary& dict);

/// Reads and validates a dictionary directory. Throws IoError for missing
/// files and CorruptData for digest, header, or count mismatches.
Dictionary load_dictionary(const std::filesystem::path& dir);
Manifest load_manifest(const std::filesystem::path& dir);

void write_signal(const std::filesystem::path& path, const Signal& f,
                  std::uint32_t prime);
Signal read_signal(const std::filesystem::path& path,
                   std::uint32_t* prime = nullptr);

/// Writes text to `path` atomically (temp file + rename).
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace oscdict
