#include "trifreq/transactions.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>

namespace trifreq {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

bool bernoulli_keep(std::uint64_t seed, std::uint64_t index, double rate) {
  if (rate >= 1.0) return true;
  const std::uint64_t z = splitmix64(splitmix64(seed) ^ (index * 0x9e3779b97f4a7c15ULL + 1));
  const double u = static_cast<double>(z >> 11) * 0x1.0p-53;
  return u < rate;
}

Dataset load_transactions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());

  Dataset d;
  d.provenance.source = path.string();

  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    Transaction tx;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p != end) {
      if (*p == ' ' || *p == '\t') {
        ++p;
        continue;
      }
      const char* tok = p;
      while (p != end && *p != ' ' && *p != '\t') ++p;
      RawItemId raw = 0;
      auto [ptr, ec] = std::from_chars(tok, p, raw);
      if (ec != std::errc() || ptr != p)
        throw ParseError("line " + std::to_string(line_no) + ": bad token '" +
                         std::string(tok, p) + "'");
      auto [it, inserted] = d.dense_of_raw.try_emplace(raw, d.n_items);
      if (inserted) {
        d.raw_of_dense.push_back(raw);
        ++d.n_items;
      }
      tx.push_back(it->second);
    }
    if (tx.empty()) continue;  // blank line, not a transaction
    std::sort(tx.begin(), tx.end());
    tx.erase(std::unique(tx.begin(), tx.end()), tx.end());
    d.transactions.push_back(std::move(tx));
  }
  if (d.transactions.empty()) throw EmptyDataset("no transactions in " + path.string());
  return d;
}

Dataset prune_singletons(const Dataset& d, std::uint32_t min_occ) {
  std::vector<std::uint64_t> occ(d.n_items, 0);
  for (const Transaction& tx : d.transactions)
    for (DenseItemId it : tx) ++occ[it];

  constexpr DenseItemId kGone = std::numeric_limits<DenseItemId>::max();
  std::vector<DenseItemId> remap(d.n_items, kGone);
  Dataset out;
  out.provenance = d.provenance;
  out.provenance.prune_min_occ = min_occ;
  for (DenseItemId old = 0; old < d.n_items; ++old) {
    if (occ[old] >= min_occ) {
      remap[old] = out.n_items++;
      out.raw_of_dense.push_back(d.raw_of_dense[old]);
    }
  }
  out.dense_of_raw.reserve(out.n_items);
  for (DenseItemId id = 0; id < out.n_items; ++id) out.dense_of_raw.emplace(out.raw_of_dense[id], id);

  out.transactions.reserve(d.transactions.size());
  for (const Transaction& tx : d.transactions) {
    Transaction kept;
    for (DenseItemId it : tx)
      if (remap[it] != kGone) kept.push_back(remap[it]);
    out.transactions.push_back(std::move(kept));  // empty transactions retained
  }
  return out;
}

Dataset sample_bernoulli(const Dataset& d, double rate, std::uint64_t seed) {
  if (!(rate > 0.0) || rate > 1.0) throw DomainError("sample rate must lie in (0, 1]");
  Dataset out;
  out.n_items = d.n_items;
  out.raw_of_dense = d.raw_of_dense;
  out.dense_of_raw = d.dense_of_raw;
  out.provenance = d.provenance;
  out.provenance.sample_rate = rate;
  out.provenance.sample_seed = seed;
  out.provenance.sampled = true;
  for (std::uint64_t i = 0; i < d.transactions.size(); ++i)
    if (bernoulli_keep(seed, i, rate)) out.transactions.push_back(d.transactions[i]);
  return out;
}

}  // namespace trifreq
