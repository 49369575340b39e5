#pragma once
#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "twistlab/lattice.hpp"
#include "twistlab/phasespace.hpp"
#include "twistlab/specfun.hpp"
#include "twistlab/spectral_ops.hpp"

namespace twistlab::io {

namespace fs = std::filesystem;

// TWF1: one JSON header line, then little-endian float64 (re, im) pairs, row-major.
void write_field(const fs::path& path, const Field& f);
Field read_field(const fs::path& path);

// Same container; the header carries a "blocks" array with the position and frequency grids.
void write_phase_space(const fs::path& path, const PhaseSpaceField& F);
PhaseSpaceField read_phase_space(const fs::path& path);

std::uint32_t file_crc32(const fs::path& path);

struct CatalogEntry {
  std::string kind;  // "hermite", "special", "laguerre"
  MultiIndex alpha, beta;
  int k = 0;
  Field field;
};

// One TWF1 file per basis element plus manifest.json with indices and crc32 checksums.
void export_catalog(const fs::path& dir, const BasisCatalog& catalog);
// Throws DataError on a missing file or checksum mismatch.
std::vector<CatalogEntry> import_catalog(const fs::path& dir);

// "# <description>" header, then one "k re im" line per eigenvalue index.
void write_multiplier(const fs::path& path, const MultiplierSpec& m);
MultiplierSpec read_multiplier(const fs::path& path);

std::string format_number(double v);  // %.17g

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header, bool write_header = true);
  CsvWriter& cell(const std::string& s);
  CsvWriter& cell(double v);
  void end_row();

 private:
  std::ostream& out_;
  std::size_t columns_, filled_ = 0;
};

}  // namespace twistlab::io
