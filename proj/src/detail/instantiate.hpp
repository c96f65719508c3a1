// Copyright 2026 The dppfact Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPPFACT_DETAIL_INSTANTIATE_HPP_
#define DPPFACT_DETAIL_INSTANTIATE_HPP_

#include <complex>

#define DPP_FOR_EACH_SCALAR(X) \
  X(float)                     \
  X(double)                    \
  X(std::complex<float>)       \
  X(std::complex<double>)

#endif  // DPPFACT_DETAIL_INSTANTIATE_HPP_
