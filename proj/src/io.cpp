#include "twistlab/io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <zlib.h>

#include <json.hpp>

namespace twistlab::io {

static_assert(std::endian::native == std::endian::little, "TWF1 payload is written natively");

using nlohmann::json;

namespace {

json grid_json(const GridSpec& g) {
  return {{"dim", g.dim}, {"points", g.points}, {"half_width", g.half_width}};
}

GridSpec grid_from(const json& j) {
  try {
    GridSpec g(j.at("dim").get<int>(), j.at("points").get<int>(), j.at("half_width").get<double>());
    return g;
  } catch (const json::exception& e) {
    throw DataError(std::string("bad grid in TWF1 header: ") + e.what());
  }
}

void write_container(const fs::path& path, const json& header, const std::vector<cplx>& v) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out << header.dump() << '\n';
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(cplx)));
  if (!out) throw DataError("write failed: " + path.string());
}

json read_container(const fs::path& path, std::vector<cplx>& v, std::size_t (*count)(const json&)) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  json h;
  try {
    h = json::parse(line);
  } catch (const json::exception& e) {
    throw DataError("malformed TWF1 header in " + path.string());
  }
  if (h.value("magic", "") != "TWF1") throw DataError(path.string() + " is not a TWF1 file");
  v.assign(count(h), cplx(0));
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(cplx)));
  if (in.gcount() != static_cast<std::streamsize>(v.size() * sizeof(cplx)))
    throw DataError("truncated TWF1 payload in " + path.string());
  if (in.peek() != std::char_traits<char>::eof())
    throw DataError("trailing bytes after TWF1 payload in " + path.string());
  return h;
}

}  // namespace

void write_field(const fs::path& path, const Field& f) {
  json h = grid_json(f.grid);
  h["magic"] = "TWF1";
  h["label"] = f.label;
  write_container(path, h, f.values);
}

Field read_field(const fs::path& path) {
  std::vector<cplx> v;
  json h = read_container(path, v, [](const json& h) { return grid_from(h).size(); });
  if (h.contains("blocks")) throw DataError(path.string() + " holds a phase-space field");
  return Field(grid_from(h), std::move(v), h.value("label", ""));
}

void write_phase_space(const fs::path& path, const PhaseSpaceField& F) {
  json h = {{"magic", "TWF1"},
            {"label", F.label},
            {"blocks", json::array({grid_json(F.position), grid_json(F.frequency)})}};
  write_container(path, h, F.values);
}

PhaseSpaceField read_phase_space(const fs::path& path) {
  std::vector<cplx> v;
  json h = read_container(path, v, [](const json& h) {
    if (!h.contains("blocks") || h["blocks"].size() != 2)
      throw DataError("phase-space TWF1 needs two header blocks");
    return grid_from(h["blocks"][0]).size() * grid_from(h["blocks"][1]).size();
  });
  PhaseSpaceField F(grid_from(h["blocks"][0]), grid_from(h["blocks"][1]), h.value("label", ""));
  F.values = std::move(v);
  return F;
}

std::uint32_t file_crc32(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  uLong crc = crc32(0L, Z_NULL, 0);
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    crc = crc32(crc, reinterpret_cast<const Bytef*>(buf.data()), static_cast<uInt>(in.gcount()));
  }
  return static_cast<std::uint32_t>(crc);
}

void export_catalog(const fs::path& dir, const BasisCatalog& cat) {
  fs::create_directories(dir);
  json entries = json::array();
  auto add = [&](const std::string& name, json entry, const Field& f) {
    write_field(dir / name, f);
    entry["file"] = name;
    entry["crc32"] = file_crc32(dir / name);
    entries.push_back(std::move(entry));
  };
  const auto idx = cat.indices();
  for (const auto& a : idx)
    add("hermite_" + to_string(a) + ".twf", {{"kind", "hermite"}, {"alpha", a}}, cat.hermite(a));
  for (const auto& a : idx)
    for (const auto& b : idx)
      add("special_" + to_string(a) + "_" + to_string(b) + ".twf",
          {{"kind", "special"}, {"alpha", a}, {"beta", b}}, cat.special(a, b));
  for (int k = 0; k <= cat.k_max(); ++k)
    add("laguerre_" + std::to_string(k) + ".twf", {{"kind", "laguerre"}, {"k", k}}, cat.laguerre(k));
  json manifest = {{"d", cat.d()}, {"k_max", cat.k_max()}, {"grid", grid_json(cat.grid())},
                   {"entries", entries}};
  std::ofstream(dir / "manifest.json") << manifest.dump(1) << '\n';
}

std::vector<CatalogEntry> import_catalog(const fs::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw DataError("no manifest.json in " + dir.string());
  json m;
  try {
    m = json::parse(in);
  } catch (const json::exception&) {
    throw DataError("malformed catalog manifest");
  }
  GridSpec g = grid_from(m.at("grid"));
  std::vector<CatalogEntry> out;
  for (const auto& e : m.at("entries")) {
    fs::path p = dir / e.at("file").get<std::string>();
    if (!fs::exists(p)) throw DataError("catalog file missing: " + p.string());
    if (file_crc32(p) != e.at("crc32").get<std::uint32_t>())
      throw DataError("checksum mismatch: " + p.string());
    CatalogEntry c;
    c.kind = e.at("kind").get<std::string>();
    if (e.contains("alpha")) c.alpha = e["alpha"].get<MultiIndex>();
    if (e.contains("beta")) c.beta = e["beta"].get<MultiIndex>();
    c.k = e.value("k", 0);
    c.field = read_field(p);
    if (c.kind != "hermite" && !c.field.grid.matches(g))
      throw DataError("catalog entry grid differs from manifest: " + p.string());
    out.push_back(std::move(c));
  }
  return out;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_multiplier(const fs::path& path, const MultiplierSpec& m) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path.string());
  out << "# " << (m.description.empty() ? "multiplier" : m.description) << '\n';
  for (int k = 0; k <= m.K(); ++k)
    out << k << ' ' << format_number(m.values[k].real()) << ' '
        << format_number(m.values[k].imag()) << '\n';
}

MultiplierSpec read_multiplier(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  MultiplierSpec m;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (m.description.empty()) m.description = line.substr(line.find_first_not_of("# ") == std::string::npos ? line.size() : line.find_first_not_of("# "));
      continue;
    }
    std::istringstream ss(line);
    int k;
    double re, im;
    if (!(ss >> k >> re >> im)) throw DataError("bad multiplier line " + std::to_string(lineno));
    if (k != m.K() + 1) throw DataError("multiplier indices must run 0, 1, 2, ...");
    m.values.emplace_back(re, im);
  }
  if (m.values.empty()) throw DataError("empty multiplier file " + path.string());
  return m;
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header, bool write_header)
    : out_(out), columns_(header.size()) {
  if (!write_header) return;
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

CsvWriter& CsvWriter::cell(const std::string& s) {
  out_ << (filled_++ ? "," : "") << s;
  return *this;
}

CsvWriter& CsvWriter::cell(double v) { return cell(format_number(v)); }

void CsvWriter::end_row() {
  if (filled_ != columns_) throw ParameterError("CSV row width does not match header");
  out_ << '\n';
  filled_ = 0;
}

}  // namespace twistlab::io
