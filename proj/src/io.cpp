#include "dynsbm/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dynsbm {

namespace {

struct CsvReader {
  std::ifstream in;
  std::string path;
  int line_no = 0;

  explicit CsvReader(const std::string& p) : in(p), path(p) {
    if (!in) throw std::runtime_error("cannot open " + p);
  }

  bool next(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      fields.clear();
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) fields.push_back(cell);
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + msg);
  }

  long parse_int(const std::string& s) {
    try {
      std::size_t pos = 0;
      const long v = std::stol(s, &pos);
      if (pos != s.size()) fail("malformed integer '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      fail("malformed integer '" + s + "'");
    }
  }
};

std::string sidecar_path(const std::string& path) {
  std::filesystem::path p(path);
  p.replace_extension(".json");
  return p.string();
}

bool read_sidecar(const std::string& path, int& n, int& T) {
  const std::string sc = sidecar_path(path);
  std::ifstream in(sc);
  if (!in) return false;
  nlohmann::json j;
  in >> j;
  if (j.contains("n")) n = j["n"].get<int>();
  if (j.contains("T")) T = j["T"].get<int>();
  return true;
}

struct EdgeRec {
  int t, u, v;
};

}  // namespace

GraphSequence load_snapshots(const std::string& path) {
  CsvReader reader(path);
  std::vector<std::string> fields;
  if (!reader.next(fields) || fields.size() < 3 || fields[0] != "t") {
    reader.fail("expected header 't,u,v'");
  }

  std::vector<EdgeRec> edges;
  int max_t = -1, max_id = -1;
  while (reader.next(fields)) {
    if (fields.size() != 3) reader.fail("expected 3 fields");
    const long t = reader.parse_int(fields[0]);
    long u = reader.parse_int(fields[1]);
    long v = reader.parse_int(fields[2]);
    if (t < 0) reader.fail("negative snapshot index");
    if (u < 0 || v < 0) reader.fail("negative node id");
    if (u == v) reader.fail("self loop");
    if (u > v) std::swap(u, v);
    edges.push_back({static_cast<int>(t), static_cast<int>(u),
                     static_cast<int>(v)});
    max_t = std::max<long>(max_t, t);
    max_id = std::max<long>({max_id, u, v});
  }

  int n = -1, T = -1;
  read_sidecar(path, n, T);
  if (n < 0) n = max_id + 1;
  if (T < 0) T = max_t + 1;
  if (n <= 0 || T <= 0) {
    throw std::runtime_error(path + ": empty dataset and no sidecar");
  }
  if (max_id >= n) {
    throw std::runtime_error(path + ": node id " + std::to_string(max_id) +
                             " out of range for n=" + std::to_string(n));
  }
  if (max_t >= T) {
    throw std::runtime_error(path + ": snapshot index " +
                             std::to_string(max_t) + " out of range for T=" +
                             std::to_string(T));
  }

  GraphSequence seq;
  seq.n = n;
  seq.adj.assign(T, BinaryMatrix(n));
  int duplicates = 0;
  for (const EdgeRec& e : edges) {
    if (seq.adj[e.t](e.u, e.v)) {
      ++duplicates;
    } else {
      seq.adj[e.t].set_symmetric(e.u, e.v, 1);
    }
  }
  if (duplicates > 0) {
    std::cerr << path << ": deduplicated " << duplicates
              << " repeated edge line(s)\n";
  }
  return seq;
}

void save_snapshots(const GraphSequence& seq, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "t,u,v\n";
  for (int t = 0; t < seq.T(); ++t) {
    for (int i = 0; i < seq.n; ++i) {
      for (int j = i + 1; j < seq.n; ++j) {
        if (seq.adj[t](i, j)) out << t << ',' << i << ',' << j << '\n';
      }
    }
  }
  nlohmann::json j{{"n", seq.n}, {"T", seq.T()}};
  std::ofstream side(sidecar_path(path));
  side << j.dump(2) << '\n';
}

MajorityMask load_mask(const std::string& path, int rows, int n) {
  CsvReader reader(path);
  std::vector<std::string> fields;
  if (!reader.next(fields) || fields.size() < 3 || fields[0] != "t") {
    reader.fail("expected header 't,i,m'");
  }
  struct Rec {
    int t, i, m;
  };
  std::vector<Rec> recs;
  int max_t = -1, max_i = -1;
  while (reader.next(fields)) {
    if (fields.size() != 3) reader.fail("expected 3 fields");
    const long t = reader.parse_int(fields[0]);
    const long i = reader.parse_int(fields[1]);
    const long m = reader.parse_int(fields[2]);
    if (t < 0 || i < 0) reader.fail("negative index");
    if (m != 0 && m != 1) reader.fail("mask value must be 0 or 1");
    recs.push_back({static_cast<int>(t), static_cast<int>(i),
                    static_cast<int>(m)});
    max_t = std::max<long>(max_t, t);
    max_i = std::max<long>(max_i, i);
  }
  int side_n = -1, side_T = -1;
  read_sidecar(path, side_n, side_T);
  if (rows < 0) rows = side_T > 0 ? side_T - 1 : max_t + 1;
  if (n < 0) n = side_n > 0 ? side_n : max_i + 1;
  if (rows <= 0 || n <= 0) {
    throw std::runtime_error(path + ": cannot determine mask shape");
  }
  if (max_t >= rows || max_i >= n) {
    throw std::runtime_error(path + ": index out of range for " +
                             std::to_string(rows) + "x" + std::to_string(n));
  }
  MajorityMask mask = MajorityMask::all_majority(rows, n);
  for (const Rec& r : recs) {
    mask(r.t, r.i) = static_cast<std::uint8_t>(r.m);
  }
  return mask;
}

void save_mask(const MajorityMask& mask, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "t,i,m\n";
  for (int t = 0; t < mask.rows(); ++t) {
    for (int i = 0; i < mask.n; ++i) {
      if (mask(t, i) == 0) out << t << ',' << i << ",0\n";
    }
  }
  nlohmann::json j{{"n", mask.n}, {"T", mask.rows() + 1}};
  std::ofstream side(sidecar_path(path));
  side << j.dump(2) << '\n';
}

Membership load_membership(const std::string& path) {
  CsvReader reader(path);
  std::vector<std::string> fields;
  if (!reader.next(fields) || fields.size() < 2 || fields[0] != "i") {
    reader.fail("expected header 'i,g'");
  }
  std::vector<std::pair<int, int>> recs;
  int max_i = -1;
  while (reader.next(fields)) {
    if (fields.size() != 2) reader.fail("expected 2 fields");
    const long i = reader.parse_int(fields[0]);
    const long g = reader.parse_int(fields[1]);
    if (i < 0) reader.fail("negative node id");
    if (g < 1) reader.fail("labels are 1-based");
    recs.push_back({static_cast<int>(i), static_cast<int>(g)});
    max_i = std::max<long>(max_i, i);
  }
  Membership g;
  g.labels.assign(max_i + 1, 0);
  for (auto [i, lab] : recs) {
    g.labels[i] = lab;
    g.k = std::max(g.k, lab);
  }
  for (std::size_t i = 0; i < g.labels.size(); ++i) {
    if (g.labels[i] == 0) {
      throw std::runtime_error(path + ": node " + std::to_string(i) +
                               " has no label");
    }
  }
  return g;
}

void save_membership(const Membership& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "i,g\n";
  for (int i = 0; i < g.n(); ++i) {
    out << i << ',' << g.labels[i] << '\n';
  }
}

}  // namespace dynsbm
