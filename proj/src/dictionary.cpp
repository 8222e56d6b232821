#include "oscdict/dictionary.hpp"

#include <cmath>
#include <numbers>
#include <optional>

#include "oscdict/error.hpp"
#include "oscdict/heisenberg.hpp"
#include "oscdict/weil.hpp"

namespace oscdict {

namespace {

constexpr std::pair<DictionaryKind, std::string_view> kKindNames[] = {
    {DictionaryKind::heisenberg, "heisenberg"},
    {DictionaryKind::oscillator_split, "oscillator-split"},
    {DictionaryKind::oscillator_nonsplit, "oscillator-nonsplit"},
    {DictionaryKind::oscillator, "oscillator"},
    {DictionaryKind::extended, "extended"},
};

// Appends without reallocating per group; callers reserve up front.
class DictionaryWriter {
 public:
  DictionaryWriter(Dictionary& dict, Index rows, Index capacity) : dict_(dict) {
    dict_.atoms.resize(rows, capacity);
    dict_.provenance.reserve(static_cast<std::size_t>(capacity));
  }

  void add(const Eigen::MatrixXcd& block, const std::vector<Index>& characters) {
    const Index group = dict_.group_count();
    if (used_ + block.cols() > dict_.atoms.cols())
      throw NumericalError("dictionary builder: capacity exceeded");
    dict_.atoms.middleCols(used_, block.cols()) = block;
    for (Index j = 0; j < block.cols(); ++j)
      dict_.provenance.push_back(
          {group, characters[static_cast<std::size_t>(j)]});
    used_ += block.cols();
    dict_.group_offsets.push_back(used_);
  }

  void finish() {
    if (used_ != dict_.atoms.cols())
      throw NumericalError("dictionary builder: size mismatch");
  }

 private:
  Dictionary& dict_;
  Index used_ = 0;
};

std::vector<Index> iota_indices(Index n, Index start = 0) {
  std::vector<Index> out(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = start + i;
  return out;
}

void count(BuildStats* stats, std::uint64_t BuildStats::*field,
           std::uint64_t n = 1) {
  if (stats) stats->*field += n;
}

Dictionary empty_dictionary(DictionaryKind kind, const FpField& field) {
  Dictionary d;
  d.kind = kind;
  d.prime = field.modulus();
  d.generator = mult_generator(field).value();
  d.atoms.resize(field.modulus(), 0);
  return d;
}

}  // namespace

std::string_view kind_name(DictionaryKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

DictionaryKind parse_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames)
    if (n == name) return k;
  throw InvalidInput("unknown dictionary kind '" + std::string(name) + "'");
}

std::vector<Index> Dictionary::atom_groups() const {
  std::vector<Index> out(static_cast<std::size_t>(size()));
  for (Index g = 0; g < group_count(); ++g)
    for (Index i = group_offsets[g]; i < group_offsets[g + 1]; ++i)
      out[static_cast<std::size_t>(i)] = g;
  return out;
}

std::uint64_t expected_size(DictionaryKind kind, std::uint64_t p) {
  const std::uint64_t split = p * (p + 1) * (p - 2) / 2;
  const std::uint64_t nonsplit = p * p * (p - 1) / 2;
  switch (kind) {
    case DictionaryKind::heisenberg: return p * (p + 1);
    case DictionaryKind::oscillator_split: return split;
    case DictionaryKind::oscillator_nonsplit: return nonsplit;
    case DictionaryKind::oscillator: return split + nonsplit;
    case DictionaryKind::extended: return p * p * (split + nonsplit);
  }
  return 0;
}

std::uint64_t expected_groups(DictionaryKind kind, std::uint64_t p) {
  const std::uint64_t split = p * (p + 1) / 2;
  const std::uint64_t nonsplit = p * (p - 1) / 2;
  switch (kind) {
    case DictionaryKind::heisenberg: return p + 1;
    case DictionaryKind::oscillator_split: return split;
    case DictionaryKind::oscillator_nonsplit: return nonsplit;
    case DictionaryKind::oscillator: return split + nonsplit;
    case DictionaryKind::extended: return p * p * (split + nonsplit);
  }
  return 0;
}

PlanePoint line_direction(const FpField& field, Index g) {
  if (g == 0) return {field.one(), field.zero()};
  return {field(g - 1), field.one()};
}

Dictionary heisenberg_dictionary(const FpField& field, BuildStats* stats) {
  const std::uint32_t p = field.modulus();
  Dictionary dict = empty_dictionary(DictionaryKind::heisenberg, field);
  DictionaryWriter writer(dict, p, static_cast<Index>(p) * (p + 1));
  for (Index line = 0; line <= static_cast<Index>(p); ++line) {
    const PlanePoint l0 = line_direction(field, line);
    const EigenDecomposition eig =
        eig_unitary(pi(HeisenbergElement::from_plane(l0)));
    count(stats, &BuildStats::eigendecompositions);
    count(stats, &BuildStats::groups);
    if (eig.size() != p)
      throw NumericalError("heisenberg_dictionary: degenerate line spectrum");
    Eigen::MatrixXcd block(p, p);
    for (std::size_t k = 0; k < eig.size(); ++k)
      block.col(static_cast<Index>(k)) = eig.eigenspaces[k].col(0);
    writer.add(block, iota_indices(p));
  }
  writer.finish();
  return dict;
}

Eigen::MatrixXcd standard_torus_basis(const FpField& field) {
  const std::uint64_t p = field.modulus();
  const std::uint64_t n = p - 1;
  const FpElement r = mult_generator(field);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(static_cast<Index>(p),
                                                  static_cast<Index>(n - 1));
  FpElement t = field.one();
  for (std::uint64_t j = 0; j < n; ++j, t *= r) {
    for (std::uint64_t k = 1; k < n; ++k) {
      const double angle = 2 * std::numbers::pi *
                           static_cast<double>(j * k % n) /
                           static_cast<double>(n);
      basis(t.value(), static_cast<Index>(k - 1)) = std::polar(scale, angle);
    }
  }
  normalize_column_phases(basis);
  return basis;
}

StandardTorusSpectrum standard_torus_spectrum(const FpField& field) {
  const std::uint32_t p = field.modulus();
  StandardTorusSpectrum out{
      eig_unitary(rho(standard_torus_generator(field)).matrix), 0};
  std::optional<std::size_t> sigma;
  std::size_t simple = 0;
  for (std::size_t k = 0; k < out.decomposition.size(); ++k) {
    const int m = out.decomposition.multiplicities[k];
    if (m == 1) {
      ++simple;
    } else if (m == 2 && !sigma) {
      sigma = k;
    } else {
      throw NumericalError("standard torus: unexpected eigenspace multiplicity");
    }
  }
  if (!sigma || simple != p - 2)
    throw NumericalError("standard torus: expected one two-dimensional "
                         "eigenspace and p-2 simple ones");
  out.sigma_cluster = *sigma;
  return out;
}

void for_each_split_system(
    const FpField& field,
    const std::function<void(Index, const SL2Element&,
                             const Eigen::MatrixXcd&)>& fn,
    BuildStats* stats) {
  const Eigen::MatrixXcd base = standard_torus_basis(field);

  // The explicit vectors must span the simple eigenspaces of rho(g_A).
  const StandardTorusSpectrum spectrum = standard_torus_spectrum(field);
  count(stats, &BuildStats::eigendecompositions);
  Eigen::MatrixXcd simple(base.rows(), base.cols());
  for (std::size_t k = 0, j = 0; k < spectrum.decomposition.size(); ++k)
    if (k != spectrum.sigma_cluster)
      simple.col(static_cast<Index>(j++)) =
          spectrum.decomposition.eigenspaces[k].col(0);
  if (subspace_distance(base, simple) > 1e-8)
    throw NumericalError("standard torus basis disagrees with rho(g_A)");

  // For R every g = [[1,b],[c,1+bc]] with the same b shares u1 and a, so the
  // expensive prefix S_a F M_u1 B_A is reused across the c loop.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> cached_key;
  Eigen::MatrixXcd cached;
  Index group = 0;
  for (const SL2Element& g : split_representatives(field)) {
    BruhatFactorization f = bruhat(g);
    const std::pair<std::uint32_t, std::uint32_t> key{
        f.cell == BruhatCell::big ? f.u1.value() + 1 : 0, f.a.value()};
    if (cached_key != key) {
      BruhatFactorization prefix = f;
      prefix.u2 = field.zero();
      cached = apply_rho(prefix, base);
      cached_key = key;
      if (f.cell == BruhatCell::big) count(stats, &BuildStats::fourier_products);
      count(stats, &BuildStats::diagonal_passes, 2);
    }
    Eigen::MatrixXcd atoms = chirp_diagonal(f.u2).asDiagonal() * cached;
    normalize_column_phases(atoms);
    count(stats, &BuildStats::diagonal_passes);
    count(stats, &BuildStats::groups);
    fn(group++, g, atoms);
  }
}

Dictionary split_oscillator(const FpField& field, BuildStats* stats) {
  const std::uint32_t p = field.modulus();
  Dictionary dict = empty_dictionary(DictionaryKind::oscillator_split, field);
  DictionaryWriter writer(
      dict, p,
      static_cast<Index>(expected_size(DictionaryKind::oscillator_split, p)));
  const auto characters = iota_indices(p - 2, 1);
  for_each_split_system(field,
                        [&](Index, const SL2Element&, const Eigen::MatrixXcd& a) {
                          writer.add(a, characters);
                        },
                        stats);
  writer.finish();
  return dict;
}

Dictionary nonsplit_oscillator(const FpField& field, BuildStats* stats) {
  const std::uint32_t p = field.modulus();
  Dictionary dict = empty_dictionary(DictionaryKind::oscillator_nonsplit, field);
  DictionaryWriter writer(
      dict, p,
      static_cast<Index>(expected_size(DictionaryKind::oscillator_nonsplit, p)));
  const auto characters = iota_indices(p);
  Eigen::MatrixXcd block(p, p);
  for (const TorusDescriptor& torus : nonsplit_tori(field)) {
    const EigenDecomposition eig = eig_unitary(rho(torus.generator).matrix);
    count(stats, &BuildStats::eigendecompositions);
    count(stats, &BuildStats::groups);
    if (eig.size() != p)
      throw NumericalError("nonsplit_oscillator: unexpected degenerate spectrum");
    for (std::size_t k = 0; k < eig.size(); ++k)
      block.col(static_cast<Index>(k)) = eig.eigenspaces[k].col(0);
    writer.add(block, characters);
  }
  writer.finish();
  return dict;
}

Dictionary oscillator_dictionary(const FpField& field, BuildStats* stats) {
  Dictionary split = split_oscillator(field, stats);
  const Dictionary nonsplit = nonsplit_oscillator(field, stats);
  Dictionary dict = std::move(split);
  dict.kind = DictionaryKind::oscillator;
  const Index offset = dict.size();
  const Index group_offset = dict.group_count();
  dict.atoms.conservativeResize(Eigen::NoChange, offset + nonsplit.size());
  dict.atoms.rightCols(nonsplit.size()) = nonsplit.atoms;
  for (AtomProvenance prov : nonsplit.provenance) {
    prov.group += group_offset;
    dict.provenance.push_back(prov);
  }
  for (std::size_t g = 1; g < nonsplit.group_offsets.size(); ++g)
    dict.group_offsets.push_back(offset + nonsplit.group_offsets[g]);
  return dict;
}

Dictionary extended_dictionary(const Dictionary& base, BuildStats* stats) {
  if (base.kind == DictionaryKind::heisenberg ||
      base.kind == DictionaryKind::extended)
    throw InvalidInput("extended_dictionary: base must be an oscillator "
                       "dictionary");
  const FpField field(base.prime);
  const std::uint32_t p = base.prime;
  const auto lut = psi_table(p);
  const Index n = base.size();
  const Index groups = base.group_count();

  Dictionary dict;
  dict.kind = DictionaryKind::extended;
  dict.prime = p;
  dict.generator = base.generator;
  dict.atoms.resize(p, n * p * p);
  dict.provenance.reserve(static_cast<std::size_t>(n) * p * p);
  dict.group_offsets.reserve(static_cast<std::size_t>(groups) * p * p + 1);

  Index shift_index = 0;
  for (std::uint32_t tau = 0; tau < p; ++tau) {
    for (std::uint32_t w = 0; w < p; ++w, ++shift_index) {
      const PlanePoint v{FpElement(tau, p), FpElement(w, p)};
      const Index start = shift_index * n;
      for (Index i = 0; i < n; ++i) {
        auto col = dict.atoms.col(start + i);
        if (shift_index == 0) {
          col = base.atoms.col(i);
        } else {
          col = apply_shift(v, base.atoms.col(i), lut);
          normalize_phase(col);
        }
        AtomProvenance prov = base.provenance[static_cast<std::size_t>(i)];
        prov.group = shift_index * groups + prov.group;
        prov.shift_tau = tau;
        prov.shift_w = w;
        prov.base_atom = i;
        dict.provenance.push_back(prov);
      }
      for (Index g = 1; g <= groups; ++g)
        dict.group_offsets.push_back(start + base.group_offsets[g]);
      count(stats, &BuildStats::diagonal_passes);
      count(stats, &BuildStats::groups, static_cast<std::uint64_t>(groups));
    }
  }
  return dict;
}

Dictionary build_dictionary(DictionaryKind kind, const FpField& field,
                            BuildStats* stats) {
  switch (kind) {
    case DictionaryKind::heisenberg: return heisenberg_dictionary(field, stats);
    case DictionaryKind::oscillator_split: return split_oscillator(field, stats);
    case DictionaryKind::oscillator_nonsplit:
      return nonsplit_oscillator(field, stats);
    case DictionaryKind::oscillator: return oscillator_dictionary(field, stats);
    case DictionaryKind::extended:
      return extended_dictionary(oscillator_dictionary(field, stats), stats);
  }
  throw InvalidInput("build_dictionary: unknown kind");
}

}  // namespace oscdict
