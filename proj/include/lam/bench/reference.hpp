#pragma once

// Figures reported for the original hardware system. They depend on a live
// language model, speech recognition and a physical arm, so the harness
// prints them next to its own numbers as external reference points only.
namespace lam::bench::reference {

inline constexpr double kDirectStepSeconds = 7.20;
inline constexpr double kDirectStepStd = 0.25;
inline constexpr double kSymbolicStepSeconds = 6.83;
inline constexpr double kSymbolicStepStd = 0.27;
inline constexpr double kDirectSuccessPercent = 100.0;
inline constexpr double kSymbolicSuccessPercent = 91.0;
inline constexpr double kRequestsPerStep = 2.0;
inline constexpr int kApproxTokens = 3000;
inline constexpr double kStepTimePValue = 0.049;
inline constexpr int kSuiteTasks = 13;
inline constexpr int kSuiteTrials = 65;

inline constexpr double kStopLatencySeconds = 1.41;
inline constexpr double kStopLatencyStd = 0.14;

inline constexpr double kSpatialAccuracy = 0.980;
inline constexpr double kRmseMeters = 0.054;
inline constexpr int kWorldConfigurations = 5;

}  // namespace lam::bench::reference
