#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ultab {

// A registered finite check with a stable id; `run` produces a verdict plus
// printable evidence (witnesses, levels, counts).
struct ReproResult {
  std::string id;
  bool pass = false;
  std::vector<std::string> evidence;
};

struct ReproTarget {
  std::string id;
  std::string description;
  std::function<ReproResult()> run;
};

const std::vector<ReproTarget>& repro_targets();
ReproResult run_repro(const std::string& id);

// parameterized forms of two targets, for the command line
ReproResult run_lemma_mn_instance(int n, int k);
ReproResult run_wpl_frames_upto(int max_points);

}  // namespace ultab
