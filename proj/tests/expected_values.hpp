// Copyright 2026 The hexwall Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Generated by tests/oracles/generate_expected.py. Do not edit.

#ifndef HEXWALL_TESTS_EXPECTED_VALUES_HPP_
#define HEXWALL_TESTS_EXPECTED_VALUES_HPP_

namespace expected {

inline constexpr double kLegFk0[] = {0.9772629811509936, 0.30230286547156826, -0.1273996724645203};
inline constexpr double kLegFk1[] = {0.8280954747271205, -0.6974951962767112, -0.3816559020950483};
inline constexpr double kLegFk2[] = {0.4830941773238432, 0.048471095868178306, -0.07801200089807897};
inline constexpr double kLegJacobian0[] = {-0.30230286547156837, 0.12170955580800695, 0.30772233177913677, 0.9772629811509939, 0.037649177535302, 0.09518967203368633, 0.0, 0.8429515906436867, 0.3824210936422442};
inline constexpr double kFoldExtension0 = 0.041721028083769596;
inline constexpr double kFoldLever0 = 0.11692769269528049;
inline constexpr double kFoldExtension1 = -0.0181653186396408;
inline constexpr double kFoldLever1 = 0.0852429849956151;
inline constexpr double kFoldExtension2 = 0.04482611745532994;
inline constexpr double kFoldLever2 = 0.06648403564176888;
inline constexpr double kArmTip[] = {0.8162842622644588, 0.5669776379766513, 0.3981317007977318};
inline constexpr double kModule0[] = {0.02511811999632871, -0.021451687799726116, 0.09000552584222037, 0.079366273176113};
inline constexpr double kModule1[] = {-0.03245129591942736, 0.0419010276664238, 0.05199389656253044, 0.10815098113399105};
inline constexpr double kMargin0 = 0.3341121088610134;
inline constexpr double kMargin1 = -0.40669589917301235;
inline constexpr double kSmoothstep03 = 0.16307999999999995;
inline constexpr double kBump03 = 0.5927039999999998;

}  // namespace expected

#endif  // HEXWALL_TESTS_EXPECTED_VALUES_HPP_
