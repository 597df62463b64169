# Copyright 2026 The shangpp Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Python bindings for the shangpp optimizer library."""

from ._shangpp import (
    ContractViolation,
    InvalidParameter,
    RateKind,
    Regime,
    build_schedule,
    empirical_mns_constant,
    fd_gradient,
    fd_value,
    run_monte_carlo,
    sigma_sweep,
    suite_names,
    theorem_bound,
    verify,
)

__all__ = [
    "ContractViolation",
    "InvalidParameter",
    "RateKind",
    "Regime",
    "build_schedule",
    "empirical_mns_constant",
    "fd_gradient",
    "fd_value",
    "run_monte_carlo",
    "sigma_sweep",
    "suite_names",
    "theorem_bound",
    "verify",
]
