#pragma once

#include <json.hpp>

#include "lpca/classify.hpp"
#include "lpca/experiments.hpp"
#include "lpca/signature.hpp"

namespace lpca {

// JSON-lines records. Every odometer record starts with the fields kind,
// rule_hash, tail, stages, verdict, violations in that order; extra fields
// follow. Field order is fixed so outputs diff cleanly.

using Record = nlohmann::ordered_json;

Record signature_record(const LocalRule& rule, const Configuration& config,
                        const OdometerSignature& sig);

Record conjugacy_record(const LocalRule& rule, const Configuration& config,
                        const OdometerSignature& sig, const ConjugacyReport& report);

Record classify_record(const LocalRule& rule, const Configuration& config,
                       const ExpectedProfile& expected, const OdometerSignature& sig,
                       const ProfileCheck& check);

Record prevalence_record(const LocalRule& rule, const EventuallyPeriodicWord& tail,
                         const PrevalenceStats& stats);

Record trial_record(const PrevalenceStats& stats, const TrialRecord& trial);

Record stages_json(const OdometerSignature& sig);

}  // namespace lpca
