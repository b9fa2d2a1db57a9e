#pragma once

#include <string>
#include <vector>

#include "dqw/cayley.hpp"
#include "dqw/evolve.hpp"
#include "dqw/fourier.hpp"
#include "dqw/localize.hpp"
#include "dqw/types.hpp"

namespace dqw {

// Shortest decimal that round-trips a double: printf %.17g.
std::string fmt_g17(double v);

// Write content to a file path, or to the given stream when path is "-".
// Failures raise IoError.
void write_output(const std::string& path, const std::string& content, std::ostream& stdout_stream);

// CSV emitters. All output: UTF-8, LF endings, header row, deterministic row
// order, 17-significant-digit floats.
std::string spectrum_to_csv(const std::vector<EigenSystem>& blocks);
std::string spectrum_to_json(const std::vector<EigenSystem>& blocks);

std::string timeavg_to_csv(const TimeAveragedResult& r, double theta_or_n);
std::string timeavg_to_json(const TimeAveragedResult& r, double theta_or_n);

std::string sweep_to_csv(const SweepResult& r);
std::string sweep_to_json(const SweepResult& r);

std::string state_to_json(const WalkState& state);

std::string graph_to_json(const CayleyGraph& g);

}  // namespace dqw
