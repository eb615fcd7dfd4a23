#include "lpca/report.hpp"

#include "lpca/rule_io.hpp"

namespace lpca {

namespace {

Record header(std::string_view kind, const LocalRule& rule, const EventuallyPeriodicWord& tail) {
  Record r;
  r["kind"] = kind;
  r["rule_hash"] = rule_hash(rule);
  r["tail"] = format_tail(tail);
  return r;
}

Record profile_json(const PrimeProfile& profile) {
  Record out = Record::object();
  for (const auto& [prime, count] : profile) out[std::to_string(prime)] = count;
  return out;
}

Record violation_json(const ConjugacyViolation& v) {
  Record out;
  out["kind"] = v.kind == ConjugacyViolation::Kind::window_mismatch ? "window" : "tau";
  out["m"] = v.m;
  out["n"] = v.n;
  out["level"] = v.level;
  out["digits_agree"] = v.digits_agree;
  out["windows_agree"] = v.windows_agree;
  return out;
}

void add_signature_extras(Record& r, const Configuration& config, const OdometerSignature& sig) {
  r["left"] = format_left(config.left());
  r["anchor"] = config.anchor();
  if (sig.tail_period) {
    r["tail_period"] = *sig.tail_period;
  } else {
    r["tail_period"] = nullptr;
  }
  r["moduli"] = sig.moduli();
  r["profile"] = profile_json(supernatural_profile(sig));
}

}  // namespace

Record stages_json(const OdometerSignature& sig) {
  Record out = Record::array();
  for (const auto& stage : sig.stages) out.push_back(Record::array({stage.k, stage.s}));
  return out;
}

Record signature_record(const LocalRule& rule, const Configuration& config,
                        const OdometerSignature& sig) {
  Record r = header("signature", rule, config.tail());
  r["stages"] = stages_json(sig);
  r["verdict"] = to_string(sig.status);
  r["violations"] = Record::array();
  add_signature_extras(r, config, sig);
  return r;
}

Record conjugacy_record(const LocalRule& rule, const Configuration& config,
                        const OdometerSignature& sig, const ConjugacyReport& report) {
  Record r = header("conjugacy", rule, config.tail());
  r["stages"] = stages_json(sig);
  r["verdict"] = report.passed() ? "PASS" : "FAIL";
  Record violations = Record::array();
  for (const auto& v : report.violations) violations.push_back(violation_json(v));
  r["violations"] = std::move(violations);
  add_signature_extras(r, config, sig);
  r["iterations"] = report.iterations;
  r["pairs_checked"] = report.pairs_checked;
  r["violation_count"] = report.violation_count;
  return r;
}

Record classify_record(const LocalRule& rule, const Configuration& config,
                       const ExpectedProfile& expected, const OdometerSignature& sig,
                       const ProfileCheck& check) {
  Record r = header("classify", rule, config.tail());
  r["stages"] = stages_json(sig);
  r["verdict"] = to_string(check.verdict);
  r["violations"] = check.verdict == Verdict::fail ? Record::array({check.detail}) : Record::array();
  add_signature_extras(r, config, sig);
  r["expected"] = describe(expected);
  r["status"] = to_string(sig.status);
  r["note"] = check.detail;
  return r;
}

Record prevalence_record(const LocalRule& rule, const EventuallyPeriodicWord& tail,
                         const PrevalenceStats& stats) {
  Record r = header("prevalence", rule, tail);
  r["seed"] = stats.seed;
  r["depth"] = stats.depth;
  r["window"] = stats.window;
  r["trials"] = stats.trials;
  r["infinite_so_far"] = stats.infinite;
  r["cycle_found"] = stats.cycles;
  r["inconclusive"] = stats.inconclusive;
  r["fraction_infinite"] = stats.fraction_infinite();
  Record histogram = Record::array();
  for (const auto& [moduli, count] : stats.histogram) {
    Record entry;
    entry["moduli"] = moduli;
    entry["count"] = count;
    histogram.push_back(std::move(entry));
  }
  r["histogram"] = std::move(histogram);
  r["caveat"] = "bounded verdicts: INFINITE_SO_FAR is a depth-limited witness, not a proof";
  return r;
}

Record trial_record(const PrevalenceStats& stats, const TrialRecord& trial) {
  Record r;
  r["kind"] = "trial";
  r["seed"] = stats.seed;
  r["trial"] = trial.trial;
  r["anchor"] = trial.anchor;
  r["verdict"] = to_string(trial.verdict.kind);
  r["k"] = trial.verdict.k_sequence;
  r["moduli"] = trial.verdict.moduli;
  if (trial.verdict.kind == ProbeKind::cycle_found) {
    r["preperiod"] = trial.verdict.preperiod;
    r["period"] = trial.verdict.period;
  }
  return r;
}

}  // namespace lpca
