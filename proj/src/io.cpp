#include "oscdict/io.hpp"

#include <bit>
#include <chrono>
#include <cstring>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "oscdict/error.hpp"

namespace oscdict {

namespace {

constexpr char kAtomsMagic[8] = {'O', 'S', 'C', 'D', 'I', 'C', 'T', '\0'};
constexpr char kSignalMagic[8] = {'O', 'S', 'C', 'S', 'I', 'G', 'N', '\0'};
constexpr std::size_t kHeaderBytes = 32;

void put_u64(std::string& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

std::uint64_t get_u64(const std::string& in, std::size_t at) {
  std::uint64_t v = 0;
  for (int b = 7; b >= 0; --b)
    v = (v << 8) | static_cast<unsigned char>(in[at + static_cast<std::size_t>(b)]);
  return v;
}

std::uint32_t get_u32(const std::string& in, std::size_t at) {
  std::uint32_t v = 0;
  for (int b = 3; b >= 0; --b)
    v = (v << 8) | static_cast<unsigned char>(in[at + static_cast<std::size_t>(b)]);
  return v;
}

void put_complex(std::string& out, Complex z) {
  put_u64(out, std::bit_cast<std::uint64_t>(z.real()));
  put_u64(out, std::bit_cast<std::uint64_t>(z.imag()));
}

Complex get_complex(const std::string& in, std::size_t at) {
  return {std::bit_cast<double>(get_u64(in, at)),
          std::bit_cast<double>(get_u64(in, at + 8))};
}

std::string header(const char (&magic)[8], std::uint32_t prime,
                   std::uint64_t count, std::uint64_t groups) {
  std::string out(magic, 8);
  put_u32(out, kFormatVersion);
  put_u32(out, prime);
  put_u64(out, count);
  put_u64(out, groups);
  return out;
}

struct Header {
  std::uint32_t version, prime;
  std::uint64_t count, groups;
};

Header parse_header(const std::string& bytes, const char (&magic)[8],
                    const std::string& what) {
  if (bytes.size() < kHeaderBytes || std::memcmp(bytes.data(), magic, 8) != 0)
    throw CorruptData(what + ": bad header");
  Header h{get_u32(bytes, 8), get_u32(bytes, 12), get_u64(bytes, 16),
           get_u64(bytes, 24)};
  if (h.version != kFormatVersion)
    throw CorruptData(what + ": unsupported format version");
  return h;
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, sep)) out.push_back(cell);
  return out;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1)
    throw NumericalError("sha256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i)
    os << std::hex << std::setw(2) << std::setfill('0')
       << static_cast<int>(digest[i]);
  return os.str();
}

std::string encode_atoms(const Dictionary& dict) {
  std::string out = header(kAtomsMagic, dict.prime,
                           static_cast<std::uint64_t>(dict.size()),
                           static_cast<std::uint64_t>(dict.group_count()));
  out.reserve(kHeaderBytes + static_cast<std::size_t>(dict.atoms.size()) * 16);
  for (Index j = 0; j < dict.atoms.cols(); ++j)
    for (Index t = 0; t < dict.atoms.rows(); ++t) put_complex(out, dict.atoms(t, j));
  return out;
}

std::string manifest_json(const Manifest& m) {
  nlohmann::ordered_json j;
  j["format"] = "oscdict-dictionary";
  j["format_version"] = kFormatVersion;
  j["prime"] = m.prime;
  j["kind"] = std::string(kind_name(m.kind));
  j["atom_count"] = m.atom_count;
  j["group_count"] = m.group_count;
  j["generator"] = m.generator;
  j["phase_convention"] = m.phase_convention;
  j["build_timestamp"] = m.build_timestamp;
  j["blob"] = {{"file", "atoms.bin"},
               {"bytes", m.blob_bytes},
               {"sha256", m.blob_sha256}};
  j["provenance_file"] = "provenance.csv";
  return j.dump(2) + "\n";
}

Manifest parse_manifest(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format") != "oscdict-dictionary" ||
        j.at("format_version") != kFormatVersion)
      throw CorruptData("manifest: unsupported format");
    Manifest m;
    m.prime = j.at("prime").get<std::uint32_t>();
    m.kind = parse_kind(j.at("kind").get<std::string>());
    m.atom_count = j.at("atom_count").get<std::uint64_t>();
    m.group_count = j.at("group_count").get<std::uint64_t>();
    m.generator = j.at("generator").get<std::uint32_t>();
    m.phase_convention = j.at("phase_convention").get<std::string>();
    m.build_timestamp = j.at("build_timestamp").get<std::string>();
    m.blob_bytes = j.at("blob").at("bytes").get<std::uint64_t>();
    m.blob_sha256 = j.at("blob").at("sha256").get<std::string>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw CorruptData(std::string("manifest: ") + e.what());
  } catch (const InvalidInput& e) {
    throw CorruptData(std::string("manifest: ") + e.what());
  }
}

std::string provenance_csv(const Dictionary& dict) {
  std::ostringstream os;
  os << "atom,group,character,shift_tau,shift_w,base_atom\n";
  for (std::size_t i = 0; i < dict.provenance.size(); ++i) {
    const auto& p = dict.provenance[i];
    os << i << ',' << p.group << ',' << p.character << ',' << p.shift_tau << ','
       << p.shift_w << ',' << p.base_atom << '\n';
  }
  return os.str();
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& bytes) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Manifest write_dictionary(const std::filesystem::path& dir,
                          const Dictionary& dict) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw IoError("cannot create directory " + dir.string());

  const std::string blob = encode_atoms(dict);
  Manifest m;
  m.prime = dict.prime;
  m.kind = dict.kind;
  m.atom_count = static_cast<std::uint64_t>(dict.size());
  m.group_count = static_cast<std::uint64_t>(dict.group_count());
  m.generator = dict.generator;
  m.build_timestamp = utc_timestamp();
  m.blob_sha256 = sha256_hex(blob);
  m.blob_bytes = blob.size();

  write_file_atomic(dir / "atoms.bin", blob);
  write_file_atomic(dir / "provenance.csv", provenance_csv(dict));
  write_file_atomic(dir / "manifest.json", manifest_json(m));
  return m;
}

Manifest load_manifest(const std::filesystem::path& dir) {
  return parse_manifest(read_file(dir / "manifest.json"));
}

Dictionary load_dictionary(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw IoError("no dictionary at " + dir.string());
  const Manifest m = load_manifest(dir);
  const std::string blob = read_file(dir / "atoms.bin");
  if (blob.size() != m.blob_bytes || sha256_hex(blob) != m.blob_sha256)
    throw CorruptData("atoms.bin does not match the manifest digest");

  const Header h = parse_header(blob, kAtomsMagic, "atoms.bin");
  if (h.prime != m.prime || h.count != m.atom_count || h.groups != m.group_count)
    throw CorruptData("atoms.bin header disagrees with the manifest");
  if (m.atom_count != expected_size(m.kind, m.prime) ||
      m.group_count != expected_groups(m.kind, m.prime))
    throw CorruptData("atom or group count does not match the kind");
  const std::uint64_t entries = m.atom_count * m.prime;
  if (blob.size() != kHeaderBytes + entries * 16)
    throw CorruptData("atoms.bin has the wrong length");

  Dictionary dict;
  dict.kind = m.kind;
  dict.prime = m.prime;
  dict.generator = m.generator;
  dict.atoms.resize(m.prime, static_cast<Index>(m.atom_count));
  std::size_t at = kHeaderBytes;
  for (Index j = 0; j < dict.atoms.cols(); ++j)
    for (Index t = 0; t < dict.atoms.rows(); ++t, at += 16)
      dict.atoms(t, j) = get_complex(blob, at);

  std::istringstream csv(read_file(dir / "provenance.csv"));
  std::string line;
  std::getline(csv, line);
  dict.provenance.reserve(m.atom_count);
  try {
    while (std::getline(csv, line)) {
      if (line.empty()) continue;
      const auto cells = split(line, ',');
      if (cells.size() != 6) throw CorruptData("provenance.csv: bad row");
      if (std::stoull(cells[0]) != dict.provenance.size())
        throw CorruptData("provenance.csv: rows out of order");
      AtomProvenance p;
      p.group = std::stoll(cells[1]);
      p.character = std::stoll(cells[2]);
      p.shift_tau = static_cast<std::uint32_t>(std::stoul(cells[3]));
      p.shift_w = static_cast<std::uint32_t>(std::stoul(cells[4]));
      p.base_atom = std::stoll(cells[5]);
      dict.provenance.push_back(p);
    }
  } catch (const std::logic_error&) {
    throw CorruptData("provenance.csv: unparsable row");
  }
  if (dict.provenance.size() != m.atom_count)
    throw CorruptData("provenance.csv: wrong row count");

  // Groups are contiguous runs numbered 0, 1, 2, ...
  dict.group_offsets = {0};
  Index current = 0;
  for (std::size_t i = 0; i < dict.provenance.size(); ++i) {
    const Index g = dict.provenance[i].group;
    if (g == current) continue;
    if (i == 0 || g != current + 1)
      throw CorruptData("provenance.csv: groups are not contiguous");
    dict.group_offsets.push_back(static_cast<Index>(i));
    current = g;
  }
  dict.group_offsets.push_back(dict.size());
  if (static_cast<std::uint64_t>(dict.group_count()) != m.group_count)
    throw CorruptData("provenance.csv: group count mismatch");
  return dict;
}

void write_signal(const std::filesystem::path& path, const Signal& f,
                  std::uint32_t prime) {
  if (static_cast<std::uint64_t>(f.size()) != prime)
    throw InvalidInput("write_signal: length must equal the prime");
  std::string out = header(kSignalMagic, prime,
                           static_cast<std::uint64_t>(f.size()), 0);
  for (Index t = 0; t < f.size(); ++t) put_complex(out, f(t));
  write_file_atomic(path, out);
}

Signal read_signal(const std::filesystem::path& path, std::uint32_t* prime) {
  const std::string bytes = read_file(path);
  const Header h = parse_header(bytes, kSignalMagic, path.string());
  if (h.count != h.prime || bytes.size() != kHeaderBytes + h.count * 16)
    throw CorruptData(path.string() + ": wrong length");
  Signal f(static_cast<Index>(h.count));
  for (Index t = 0; t < f.size(); ++t)
    f(t) = get_complex(bytes, kHeaderBytes + static_cast<std::size_t>(t) * 16);
  if (prime) *prime = h.prime;
  return f;
}

}  // namespace oscdict
