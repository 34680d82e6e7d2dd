#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "trifreq/errors.hpp"

namespace trifreq {

using RawItemId = std::uint64_t;   // token as it appears in the input file
using DenseItemId = std::uint32_t; // contiguous index in [0, n_items)

/// Strictly increasing dense item ids, duplicates removed.  May be empty
/// after pruning.
using Transaction = std::vector<DenseItemId>;

struct Provenance {
  std::string source;
  std::uint32_t prune_min_occ = 0;
  double sample_rate = 1.0;
  std::uint64_t sample_seed = 0;
  bool sampled = false;
};

/// Immutable after construction; operations below are pure functions of their
/// inputs, so concurrent reads are safe.
struct Dataset {
  std::vector<Transaction> transactions;
  std::uint32_t n_items = 0;
  std::vector<RawItemId> raw_of_dense;  // dense id -> raw id, a bijection
  std::unordered_map<RawItemId, DenseItemId> dense_of_raw;
  Provenance provenance;

  std::uint64_t size() const { return transactions.size(); }  // m

  std::optional<DenseItemId> dense_id(RawItemId raw) const {
    auto it = dense_of_raw.find(raw);
    if (it == dense_of_raw.end()) return std::nullopt;
    return it->second;
  }
};

/// Parse a FIMI-style file: one transaction per non-empty line, whitespace
/// separated decimal item ids, LF or CRLF endings.  Raw ids are remapped to
/// dense ids in first-appearance order; duplicates within a line collapse.
/// Throws ParseError (with line number) and EmptyDataset.
Dataset load_transactions(const std::filesystem::path& path);

/// Remove every item whose occurrence count in d is below min_occ, then
/// re-densify surviving ids preserving their order.  Counts are taken against
/// d in a single pass (no iterated pruning); emptied transactions stay so m is
/// unchanged.
Dataset prune_singletons(const Dataset& d, std::uint32_t min_occ);

/// Keep each transaction independently with the given probability.  The
/// decision for transaction i is a pure function of (seed, i), so results
/// reproduce across runs and thread counts.  Requires 0 < rate <= 1.
Dataset sample_bernoulli(const Dataset& d, double rate, std::uint64_t seed);

/// The per-transaction inclusion decision used by sample_bernoulli.
bool bernoulli_keep(std::uint64_t seed, std::uint64_t index, double rate);

}  // namespace trifreq
