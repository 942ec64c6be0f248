#pragma once

#include <cstdint>
#include <utility>

#include "dtnlab/event_log.hpp"
#include "dtnlab/gbdt.hpp"

namespace dtnlab {

/// Builds one training example per relayed event in a collect-mode log.
/// The label is 1 iff the receiving host appears on the hop path recorded
/// by the message's delivered event, 0 otherwise (including messages that
/// were never delivered).
/// Throws when a relayed event lacks the feature snapshot (log was not
/// produced in collect mode).
Dataset build_dataset(const EventLog& log);

/// Appends the examples of `log` to an existing dataset (multi-log training).
void append_dataset(Dataset& ds, const EventLog& log);

/// Uniform random permutation by seed, first ceil(train_fraction * n)
/// examples become the training set. Deterministic per seed.
/// Throws when the dataset has fewer than 5 examples.
std::pair<Dataset, Dataset> split_dataset(const Dataset& ds, double train_fraction,
                                          std::uint64_t seed);

} // namespace dtnlab
