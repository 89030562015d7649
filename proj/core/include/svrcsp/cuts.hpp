#pragma once

#include <limits>
#include <string>
#include <vector>

#include "svrcsp/model.hpp"

namespace svrcsp {

enum class CutFamily { Prec, Pd1, Pd2, Pd3, Sec1, Sec2 };

const char* cut_family_name(CutFamily f);

enum class Pd3Variant { Full, A, B };

struct Cut {
  CutFamily family = CutFamily::Prec;
  std::string name;  // deterministic, encodes the provenance indices
  std::vector<std::pair<int, double>> coeffs;  // over model variables, sorted
  char sense = 'L';
  double rhs = 0.0;
};

struct CutPool {
  std::vector<Cut> cuts;

  // Returns false when a cut with the same name is already pooled.
  bool add(Cut cut);
  void add_all(std::vector<Cut> more);
  int count(CutFamily f) const;

 private:
  std::vector<std::string> names_;  // sorted
};

std::vector<Cut> gen_prec(const MilpModel& model);
std::vector<Cut> gen_pd1(const MilpModel& model);
std::vector<Cut> gen_pd2(const MilpModel& model);
std::vector<Cut> gen_pd3(const MilpModel& model, int k, Pd3Variant variant);
std::vector<Cut> gen_sec1(const MilpModel& model, int kmax);
std::vector<Cut> gen_sec2(const MilpModel& model, int kmax);

// Every family with default parameters (k = |V| capped at 2, kmax = 3).
std::vector<Cut> gen_all(const MilpModel& model);

inline constexpr int kInfDuration = std::numeric_limits<int>::max();

enum class DurMode {
  DeliverFromStart,  // anchor = truck id; ends at last delivery completion
  PickupFromStart,   // anchor = truck id; ends at last pickup completion
  DeliverFromInstant,  // anchor = instant; no initial trip
};

// Minimum timeline over all request orders of R'; kInfDuration when
// unservable.  Requires 2 <= |R'| <= 7.
int min_duration(const Instance& inst, const std::vector<int>& reqs, DurMode mode, int anchor);

// Violated cuts sorted by decreasing violation (ties by name), at most
// `cap` of them.
std::vector<Cut> separate(const CutPool& pool, const std::vector<double>& x,
                          double tolerance = 1e-6, int cap = 50);

double cut_violation(const Cut& cut, const std::vector<double>& x);

}  // namespace svrcsp
