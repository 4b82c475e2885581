#include "cubelab/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cubelab/adjacency.hpp"
#include "cubelab/errors.hpp"
#include "cubelab/rng.hpp"

namespace cubelab {

namespace {

constexpr char kSampleTag[] = "cubelab-sample 1";
constexpr char kSkeletonTag[] = "cubelab-skeleton 1";

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>(v >> (8 * i)));
}

class ByteReader {
 public:
  explicit ByteReader(std::istream& in) : in_(in) {}
  std::uint64_t u64() {
    unsigned char buf[8];
    in_.read(reinterpret_cast<char*>(buf), 8);
    if (!in_) throw GuardError("file payload truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{buf[i]} << (8 * i);
    return v;
  }

 private:
  std::istream& in_;
};

// Writes content to path via a temporary file + rename, so readers never see
// a partial file and concurrent writers resolve to one winner.
void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw GuardError("cannot open for writing: " + tmp);
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out) throw GuardError("write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw GuardError("rename failed: " + path + ": " + ec.message());
}

// Header lines are "key value" pairs ending at a bare "payload" line.
struct Manifest {
  std::string tag;
  std::vector<std::pair<std::string, std::string>> fields;

  const std::string& get(const std::string& key) const {
    for (const auto& [k, v] : fields) {
      if (k == key) return v;
    }
    throw GuardError("manifest is missing field '" + key + "'");
  }
  bool has(const std::string& key) const {
    for (const auto& [k, v] : fields) {
      (void)v;
      if (k == key) return true;
    }
    return false;
  }
};

Manifest read_manifest(std::istream& in, const std::string& path) {
  Manifest m;
  if (!std::getline(in, m.tag)) {
    throw GuardError("empty or unreadable file: " + path);
  }
  std::string line;
  while (std::getline(in, line)) {
    if (line == "payload") return m;
    const auto space = line.find(' ');
    if (space == std::string::npos) {
      throw GuardError("malformed manifest line in " + path + ": " + line);
    }
    m.fields.emplace_back(line.substr(0, space), line.substr(space + 1));
  }
  throw GuardError("manifest has no payload marker: " + path);
}

std::uint64_t parse_u64(const std::string& s) {
  std::size_t pos = 0;
  const std::uint64_t v = std::stoull(s, &pos, 10);
  if (pos != s.size()) throw GuardError("malformed integer field: " + s);
  return v;
}

std::string sample_header(const char* kind, int d, const Rational& p,
                          const Rational& q, std::uint64_t seed) {
  std::ostringstream h;
  h << kSampleTag << '\n'
    << "kind " << kind << '\n'
    << "d " << d << '\n'
    << "p " << format_rational(p) << '\n'
    << "q " << format_rational(q) << '\n'
    << "seed " << seed << '\n';
  return h.str();
}

}  // namespace

void write_vertex_sample(const std::string& path,
                         const PercolationSample& sample) {
  std::string out = sample_header("vertex", sample.d, sample.p, Rational(0),
                                  sample.seed);
  out += "words " + std::to_string(sample.vertices.words().size()) + '\n';
  out += "payload\n";
  for (std::uint64_t w : sample.vertices.words()) put_u64(out, w);
  atomic_write(path, out);
}

PercolationSample read_vertex_sample(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GuardError("cannot open sample file: " + path);
  const Manifest m = read_manifest(in, path);
  if (m.tag != kSampleTag) {
    throw GuardError("unrecognised sample format in " + path);
  }
  if (m.get("kind") != "vertex") {
    throw GuardError(path + " holds a " + m.get("kind") +
                     " sample, not a vertex sample");
  }
  const int d = static_cast<int>(parse_u64(m.get("d")));
  PercolationSample sample(d, parse_rational(m.get("p")),
                           parse_u64(m.get("seed")));
  const std::uint64_t words = parse_u64(m.get("words"));
  if (words != sample.vertices.words().size()) {
    throw GuardError("word count does not match dimension in " + path);
  }
  ByteReader r(in);
  for (auto& w : sample.vertices.mutable_words()) w = r.u64();
  // For d < 6 the single word has spare bits above vertex 2^d - 1.
  if (d < 6 && (sample.vertices.words()[0] & ~low_bits(1 << d)) != 0) {
    throw GuardError("sample payload sets vertices beyond 2^d in " + path);
  }
  return sample;
}

void write_mixed_sample(const std::string& path, const MixedSample& sample) {
  std::string out =
      sample_header("mixed", sample.d, sample.p, sample.q, sample.seed);
  out += "words " + std::to_string(sample.vertices.words().size()) + '\n';
  out += "edges " + std::to_string(sample.edges.size()) + '\n';
  out += "payload\n";
  for (std::uint64_t w : sample.vertices.words()) put_u64(out, w);
  for (const auto& [u, v] : sample.edges) {
    put_u64(out, u);
    put_u64(out, v);
  }
  atomic_write(path, out);
}

MixedSample read_mixed_sample(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GuardError("cannot open sample file: " + path);
  const Manifest m = read_manifest(in, path);
  if (m.tag != kSampleTag) {
    throw GuardError("unrecognised sample format in " + path);
  }
  if (m.get("kind") != "mixed") {
    throw GuardError(path + " holds a " + m.get("kind") +
                     " sample, not a mixed sample");
  }
  const int d = static_cast<int>(parse_u64(m.get("d")));
  MixedSample sample(d, parse_rational(m.get("p")),
                     parse_rational(m.get("q")), parse_u64(m.get("seed")));
  const std::uint64_t words = parse_u64(m.get("words"));
  if (words != sample.vertices.words().size()) {
    throw GuardError("word count does not match dimension in " + path);
  }
  const std::uint64_t edges = parse_u64(m.get("edges"));
  ByteReader r(in);
  for (auto& w : sample.vertices.mutable_words()) w = r.u64();
  if (d < 6 && (sample.vertices.words()[0] & ~low_bits(1 << d)) != 0) {
    throw GuardError("sample payload sets vertices beyond 2^d in " + path);
  }
  sample.edges.reserve(edges);
  for (std::uint64_t i = 0; i < edges; ++i) {
    const VertexId u = r.u64();
    const VertexId v = r.u64();
    if (u >= v || v >= (VertexId{1} << d)) {
      throw GuardError("malformed edge record in " + path);
    }
    sample.edges.emplace_back(u, v);
  }
  return sample;
}

std::string skeleton_cache_filename(int d, const Rational& p,
                                    std::uint64_t seed, int k_max) {
  std::ostringstream name;
  name << "skeleton_d" << d << "_p" << p.get_num() << '-' << p.get_den()
       << "_s" << seed << "_k" << k_max << ".skcache";
  return name.str();
}

void write_skeleton(const std::string& path, const SkeletonGraph& skeleton,
                    bool binary) {
  std::ostringstream h;
  h << kSkeletonTag << ' ' << (binary ? "binary" : "text") << '\n'
    << "d " << skeleton.d << '\n'
    << "p " << format_rational(skeleton.p) << '\n'
    << "seed " << skeleton.seed << '\n'
    << "k_max " << skeleton.k_max << '\n'
    << "vertices " << skeleton.vertices.size() << '\n'
    << "edges " << skeleton.edges.size() << '\n'
    << "payload\n";
  std::string out = h.str();
  if (binary) {
    for (VertexId v : skeleton.vertices) put_u64(out, v);
    for (const SkeletonEdge& e : skeleton.edges) {
      put_u64(out, static_cast<std::uint64_t>(e.k));
      put_u64(out, e.u);
      put_u64(out, e.v);
    }
  } else {
    std::ostringstream body;
    for (VertexId v : skeleton.vertices) body << v << '\n';
    for (const SkeletonEdge& e : skeleton.edges) {
      body << e.k << ' ' << e.u << ' ' << e.v << '\n';
    }
    out += body.str();
  }
  atomic_write(path, out);
}

SkeletonGraph read_skeleton(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GuardError("cannot open skeleton cache: " + path);
  const Manifest m = read_manifest(in, path);
  bool binary = false;
  if (m.tag == std::string(kSkeletonTag) + " binary") {
    binary = true;
  } else if (m.tag != std::string(kSkeletonTag) + " text") {
    throw GuardError("unrecognised skeleton format in " + path);
  }
  SkeletonGraph sk;
  sk.d = static_cast<int>(parse_u64(m.get("d")));
  check_dimension(sk.d);
  sk.p = parse_rational(m.get("p"));
  sk.seed = parse_u64(m.get("seed"));
  sk.k_max = static_cast<int>(parse_u64(m.get("k_max")));
  const std::uint64_t nv = parse_u64(m.get("vertices"));
  const std::uint64_t ne = parse_u64(m.get("edges"));
  sk.vertices.reserve(nv);
  sk.edges.reserve(ne);
  if (binary) {
    ByteReader r(in);
    for (std::uint64_t i = 0; i < nv; ++i) sk.vertices.push_back(r.u64());
    for (std::uint64_t i = 0; i < ne; ++i) {
      SkeletonEdge e;
      e.k = static_cast<int>(r.u64());
      e.u = r.u64();
      e.v = r.u64();
      sk.edges.push_back(e);
    }
  } else {
    for (std::uint64_t i = 0; i < nv; ++i) {
      std::uint64_t v = 0;
      if (!(in >> v)) throw GuardError("truncated vertex list in " + path);
      sk.vertices.push_back(v);
    }
    for (std::uint64_t i = 0; i < ne; ++i) {
      SkeletonEdge e;
      std::uint64_t k = 0;
      if (!(in >> k >> e.u >> e.v)) {
        throw GuardError("truncated edge list in " + path);
      }
      e.k = static_cast<int>(k);
      sk.edges.push_back(e);
    }
  }
  // Canonical-order and range checks, so a corrupt cache cannot masquerade
  // as a skeleton.
  for (std::size_t i = 0; i < sk.vertices.size(); ++i) {
    check_vertex(sk.d, sk.vertices[i]);
    if (i > 0 && sk.vertices[i - 1] >= sk.vertices[i]) {
      throw GuardError("vertex list not strictly ascending in " + path);
    }
  }
  for (std::size_t i = 0; i < sk.edges.size(); ++i) {
    const SkeletonEdge& e = sk.edges[i];
    if (e.u >= e.v || e.k < 1 || e.k > sk.k_max ||
        hamming_distance(e.u, e.v) != e.k) {
      throw GuardError("malformed skeleton edge in " + path);
    }
    if (i > 0 && !(sk.edges[i - 1] < e)) {
      throw GuardError("edge list not strictly ascending in " + path);
    }
  }
  return sk;
}

CacheVerifyReport verify_cache(const SkeletonGraph& skeleton,
                               const Rational& fraction) {
  check_probability(fraction, "verification fraction");
  PercolationSample sample(skeleton.d, skeleton.p, skeleton.seed);
  for (VertexId v : skeleton.vertices) sample.vertices.insert(v);

  const RetentionThreshold pick = make_threshold(fraction);
  const std::uint64_t key =
      derive_key(skeleton.seed, RngDomain::kCacheCheck);

  CacheVerifyReport report;
  const std::size_t n = skeleton.vertices.size();
  std::uint64_t pair_index = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++pair_index) {
      const VertexId u = skeleton.vertices[i];
      const VertexId v = skeleton.vertices[j];
      if (hamming_distance(u, v) > skeleton.k_max) continue;
      ++report.pairs_total;
      if (!pick.retains(counter_word(key, pair_index))) continue;
      ++report.pairs_checked;
      const bool recomputed = local_adjacency(sample, u, v);
      if (recomputed != skeleton.has_edge(u, v)) ++report.mismatches;
    }
  }
  return report;
}

namespace {

const char* const kColumns[] = {"experiment", "d",      "p",     "q",
                                "k",          "m",      "b",     "alpha",
                                "epsilon",    "seed",   "trials", "metric",
                                "value",      "precision", "walltime_s"};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_walltime(double seconds) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", seconds);
  return buf;
}

}  // namespace

std::string csv_header() {
  std::string out = "# ";
  out += kResultSchema;
  out += '\n';
  bool first = true;
  for (const char* c : kColumns) {
    if (!first) out += ',';
    out += c;
    first = false;
  }
  out += '\n';
  return out;
}

std::string csv_row(const ResultRow& r) {
  const std::string cells[] = {r.experiment, r.d,       r.p,
                               r.q,          r.k,       r.m,
                               r.b,          r.alpha,   r.epsilon,
                               r.seed,       r.trials,  r.metric,
                               r.value,      r.precision,
                               format_walltime(r.walltime_s)};
  std::string out;
  bool first = true;
  for (const std::string& c : cells) {
    if (!first) out += ',';
    out += csv_escape(c);
    first = false;
  }
  out += '\n';
  return out;
}

std::string json_rows(const std::vector<ResultRow>& rows) {
  nlohmann::json doc;
  doc["schema"] = kResultSchema;
  doc["rows"] = nlohmann::json::array();
  for (const ResultRow& r : rows) {
    nlohmann::json o;
    o["experiment"] = r.experiment;
    o["d"] = r.d;
    o["p"] = r.p;
    o["q"] = r.q;
    o["k"] = r.k;
    o["m"] = r.m;
    o["b"] = r.b;
    o["alpha"] = r.alpha;
    o["epsilon"] = r.epsilon;
    o["seed"] = r.seed;
    o["trials"] = r.trials;
    o["metric"] = r.metric;
    o["value"] = r.value;
    o["precision"] = r.precision;
    o["walltime_s"] = format_walltime(r.walltime_s);
    doc["rows"].push_back(std::move(o));
  }
  return doc.dump(2) + "\n";
}

void write_rows(const std::string& path, const std::vector<ResultRow>& rows,
                const std::string& format) {
  if (format != "csv" && format != "json") {
    throw GuardError("output format must be csv or json");
  }
  std::string content;
  if (format == "json") {
    content = json_rows(rows);
  } else {
    for (const ResultRow& r : rows) content += csv_row(r);
  }
  if (path.empty()) {
    if (format == "csv") std::fputs(csv_header().c_str(), stdout);
    std::fputs(content.c_str(), stdout);
    return;
  }
  if (format == "json") {
    atomic_write(path, content);
    return;
  }
  const bool fresh = [&] {
    std::error_code ec;
    const auto size = std::filesystem::file_size(path, ec);
    return ec || size == 0;
  }();
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw GuardError("cannot open for writing: " + path);
  if (fresh) out << csv_header();
  out << content;
  if (!out) throw GuardError("write failed: " + path);
}

}  // namespace cubelab
