#pragma once

namespace signbal {

double normal_pdf(double x) noexcept;
double normal_cdf(double x) noexcept;
/// Inverse of normal_cdf; throws InvalidArgument outside (0, 1).
double normal_quantile(double p);

}  // namespace signbal
