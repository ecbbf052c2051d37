#include "plexdist/plex_io.hpp"

#include "plexdist/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

namespace plexdist {

namespace {

std::array<PointId, 4> file_strata(const Plex& plex) {
  const int dim = plex.dimension();
  if (dim > 3)
    fail(ErrorKind::kUnsupportedShape, "the mesh format stores at most 3 dimensions");
  if (dim <= 0)
    return {0, plex.size(), 0, 0};
  return {plex.num_cells(), plex.num_vertices(), plex.num_faces(), plex.num_edges()};
}

void put_double(std::string& out, double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), end);
}

template <class Range>
void put_line(std::string& out, std::string_view head, const Range& values) {
  out += head;
  for (auto v : values) {
    out += ' ';
    out += std::to_string(v);
  }
  out += '\n';
}

class LineReader {
public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next() {
    if (pos_ >= text_.size())
      return false;
    auto end = text_.find('\n', pos_);
    if (end == std::string_view::npos)
      end = text_.size();
    line_ = text_.substr(pos_, end - pos_);
    if (!line_.empty() && line_.back() == '\r')
      line_.remove_suffix(1);
    pos_ = end + 1;
    ++number_;
    tokens_.clear();
    std::size_t i = 0;
    while (i < line_.size()) {
      while (i < line_.size() && (line_[i] == ' ' || line_[i] == '\t'))
        ++i;
      std::size_t j = i;
      while (j < line_.size() && line_[j] != ' ' && line_[j] != '\t')
        ++j;
      if (j > i)
        tokens_.push_back(line_.substr(i, j - i));
      i = j;
    }
    return true;
  }

  /// Next non-blank line; fails at end of input.
  void expect_line(std::string_view what) {
    while (next())
      if (!tokens_.empty())
        return;
    error("unexpected end of input, expected " + std::string(what));
  }

  void expect_head(std::string_view head) {
    expect_line(head);
    if (tokens_[0] != head)
      error("expected '" + std::string(head) + "', found '" + std::string(tokens_[0]) + "'");
  }

  const std::vector<std::string_view>& tokens() const { return tokens_; }
  int number() const { return number_; }

  template <class T>
  T parse(std::string_view tok) const {
    T v{};
    auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || end != tok.data() + tok.size())
      error("malformed number '" + std::string(tok) + "'");
    return v;
  }

  template <class T>
  std::vector<T> rest(std::size_t from) const {
    std::vector<T> out;
    out.reserve(tokens_.size() - std::min(from, tokens_.size()));
    for (std::size_t i = from; i < tokens_.size(); ++i)
      out.push_back(parse<T>(tokens_[i]));
    return out;
  }

  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::kParse, "line " + std::to_string(number_) + ": " + msg);
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int number_ = 0;
  std::string_view line_;
  std::vector<std::string_view> tokens_;
};

} // namespace

std::string write_plex(const Plex& plex) {
  const auto strata = file_strata(plex);
  std::string out = "plexfile 1\n";
  out += "dim " + std::to_string(plex.coordinate_dim()) + "\n";
  put_line(out, "strata", strata);
  put_line(out, "conesizes", plex.cone_sizes());
  put_line(out, "cones", plex.cones());
  put_line(out, "orients", plex.orientations());
  out += "coords\n";
  const int cd = plex.coordinate_dim();
  if (cd > 0) {
    const auto coords = plex.coordinates();
    for (std::size_t v = 0; v < coords.size() / cd; ++v) {
      for (int k = 0; k < cd; ++k) {
        if (k > 0)
          out += ' ';
        put_double(out, coords[v * cd + k]);
      }
      out += '\n';
    }
  }
  for (const auto& [name, label] : plex.labels()) {
    if (name.empty() || name.find_first_of(" \t\n\r") != std::string::npos)
      fail(ErrorKind::kInvalidArgument, "label name '" + name + "' cannot be stored");
    out += "label " + name + "\n";
    for (const auto& [value, pts] : label.strata()) {
      out += "value " + std::to_string(value) + " " + std::to_string(pts.size());
      for (auto p : pts)
        out += " " + std::to_string(p);
      out += '\n';
    }
  }
  out += "end\n";
  return out;
}

void write_plex(const Plex& plex, std::ostream& out) { out << write_plex(plex); }

Plex read_plex(std::string_view text) {
  LineReader in(text);
  in.expect_head("plexfile");
  if (in.tokens().size() != 2 || in.tokens()[1] != "1")
    in.error("unsupported plexfile version");

  in.expect_head("dim");
  if (in.tokens().size() != 2)
    in.error("'dim' takes one value");
  const int cdim = in.parse<int>(in.tokens()[1]);
  if (cdim < 0)
    in.error("negative coordinate dimension");

  in.expect_head("strata");
  if (in.tokens().size() != 5)
    in.error("'strata' takes four counts");
  const auto strata = in.rest<PointId>(1);
  const int strata_line = in.number();

  in.expect_head("conesizes");
  auto sizes = in.rest<std::int32_t>(1);
  in.expect_head("cones");
  auto cones = in.rest<PointId>(1);
  const int cones_line = in.number();
  std::int64_t total = 0;
  for (auto s : sizes) {
    if (s < 0)
      in.error("negative cone size");
    total += s;
  }
  if (total != static_cast<std::int64_t>(cones.size()))
    in.error("cone sizes sum to " + std::to_string(total) + " but " +
             std::to_string(cones.size()) + " cone points are listed");
  in.expect_head("orients");
  auto orients = in.rest<std::int32_t>(1);
  if (orients.size() != cones.size())
    in.error("expected " + std::to_string(cones.size()) + " orientations, found " +
             std::to_string(orients.size()));

  Plex plex;
  try {
    plex = Plex::build(std::move(sizes), std::move(cones), std::move(orients));
  } catch (const Error& e) {
    fail(ErrorKind::kParse, "line " + std::to_string(cones_line) + ": " + e.what());
  }
  if (file_strata(plex) != std::array<PointId, 4>{strata[0], strata[1], strata[2], strata[3]})
    fail(ErrorKind::kParse,
         "line " + std::to_string(strata_line) + ": stratum counts do not match the cones");

  in.expect_head("coords");
  const PointId nv = plex.num_vertices();
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(nv) * cdim);
  if (cdim > 0)
    for (PointId v = 0; v < nv; ++v) {
      in.expect_line("coordinates");
      if (static_cast<int>(in.tokens().size()) != cdim)
        in.error("expected " + std::to_string(cdim) + " coordinates");
      for (const auto& tok : in.tokens())
        coords.push_back(in.parse<double>(tok));
    }
  plex.set_coordinates(cdim, std::move(coords));

  std::string current;
  Label label;
  bool have_label = false;
  auto flush = [&]() {
    if (have_label)
      plex.set_label(current, std::move(label));
    label = Label{};
    have_label = false;
  };
  for (;;) {
    in.expect_line("'label', 'value' or 'end'");
    const auto head = in.tokens()[0];
    if (head == "end") {
      if (in.tokens().size() != 1)
        in.error("trailing tokens after 'end'");
      flush();
      break;
    }
    if (head == "label") {
      if (in.tokens().size() != 2)
        in.error("'label' takes one name");
      flush();
      current = std::string(in.tokens()[1]);
      if (plex.has_label(current))
        in.error("label '" + current + "' appears twice");
      have_label = true;
      continue;
    }
    if (head == "value") {
      if (!have_label)
        in.error("'value' outside a label block");
      if (in.tokens().size() < 3)
        in.error("'value' needs a value and a count");
      const auto value = in.parse<int>(in.tokens()[1]);
      const auto count = in.parse<std::int64_t>(in.tokens()[2]);
      auto pts = in.rest<PointId>(3);
      if (count != static_cast<std::int64_t>(pts.size()))
        in.error("value " + std::to_string(value) + " declares " + std::to_string(count) +
                 " points but lists " + std::to_string(pts.size()));
      for (auto p : pts)
        if (!plex.in_chart(p))
          in.error("label point " + std::to_string(p) + " outside chart");
      label.insert(value, pts);
      continue;
    }
    in.error("unexpected '" + std::string(head) + "'");
  }
  while (in.next())
    if (!in.tokens().empty())
      in.error("content after 'end'");
  return plex;
}

void write_plex_file(const Plex& plex, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    fail(ErrorKind::kInvalidArgument, "cannot open " + path.string() + " for writing");
  out << write_plex(plex);
  if (!out)
    fail(ErrorKind::kInvalidArgument, "failed writing " + path.string());
}

Plex read_plex_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    fail(ErrorKind::kInvalidArgument, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_plex(buf.str());
}

std::string write_sf(const StarForest& sf) {
  std::vector<std::pair<PointId, RemotePoint>> rows;
  for (PointId i = 0; i < sf.nleaves(); ++i)
    rows.emplace_back(sf.leaf(i), sf.remote(i));
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string out;
  for (const auto& [l, rp] : rows)
    out += "local " + std::to_string(l) + " -> rank " + std::to_string(rp.rank) + " index " +
           std::to_string(rp.index) + "\n";
  return out;
}

std::string write_sf_listing(std::span<const StarForest> sf) {
  std::string out;
  for (std::size_t r = 0; r < sf.size(); ++r)
    out += "rank " + std::to_string(r) + "\n" + write_sf(sf[r]);
  return out;
}

DistributedSF read_sf_listing(std::string_view text, std::span<const PointId> nroots) {
  const auto nranks = static_cast<int>(nroots.size());
  std::vector<std::vector<PointId>> leaves(nranks);
  std::vector<std::vector<RemotePoint>> remotes(nranks);
  LineReader in(text);
  int current = -1;
  while (in.next()) {
    const auto& t = in.tokens();
    if (t.empty())
      continue;
    if (t[0] == "rank") {
      if (t.size() != 2)
        in.error("'rank' takes one value");
      current = in.parse<int>(t[1]);
      if (current < 0 || current >= nranks)
        in.error("rank " + std::to_string(current) + " outside [0, " + std::to_string(nranks) + ")");
      continue;
    }
    if (t[0] != "local" || t.size() != 7 || t[2] != "->" || t[3] != "rank" || t[5] != "index")
      in.error("expected 'local <l> -> rank <r> index <i>'");
    if (current < 0)
      in.error("leaf listed before any 'rank' header");
    const auto l = in.parse<PointId>(t[1]);
    const RemotePoint rp{in.parse<std::int32_t>(t[4]), in.parse<std::int32_t>(t[6])};
    if (l < 0 || l >= nroots[current])
      in.error("leaf " + std::to_string(l) + " outside the mesh of rank " + std::to_string(current));
    if (rp.rank < 0 || rp.rank >= nranks || rp.index < 0 || rp.index >= nroots[rp.rank])
      in.error("root outside the listed meshes");
    leaves[current].push_back(l);
    remotes[current].push_back(rp);
  }
  DistributedSF sf(nranks);
  for (int r = 0; r < nranks; ++r) {
    if (leaves[r].empty()) {
      sf[r] = StarForest(nroots[r], {}, {});
      continue;
    }
    try {
      sf[r] = sf_set_graph(nroots[r], std::move(leaves[r]), std::move(remotes[r]), nranks);
    } catch (const Error& e) {
      fail(ErrorKind::kParse, "rank " + std::to_string(r) + ": " + e.what());
    }
  }
  return sf;
}

} // namespace plexdist
