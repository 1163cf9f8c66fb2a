#pragma once

// Constants measured once on the reference runs and asserted within
// kRegressionTolerance afterwards. Re-measure with `terrain-seek verify
// --measure` after an intentional change to the 2.5D strategy.

namespace tseek::regression {

inline constexpr double kRegressionTolerance = 0.10;

// max over pit-grid families (lambda 16, 64, 256; worst pit) of ratio / sqrt(lambda)
inline constexpr double kRatioPerSqrtLambda = 55.61;

// max over 2.5D reference runs of (path length on reaching G_x) / (x sqrt(lambda))
inline constexpr double kPathPerGrid = 27.8;

// allowed growth of the worst ratio between consecutive lambda (x4) values
inline constexpr double kLambdaScalingSlack = 1.5;

}  // namespace tseek::regression
