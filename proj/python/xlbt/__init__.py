# SPDX-License-Identifier: Apache-2.0
#
# xlbt - near-field beam training simulator for extremely large-scale arrays
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Near-field beam training for extremely large-scale antenna arrays.

Spherical-wavefront channel model, far-field and polar-domain codebooks,
the two-phase (angle then distance) training protocol, baselines, and a
seeded Monte Carlo evaluation harness. The heavy lifting lives in the
compiled `_xlbt` extension.
"""

from ._xlbt import *  # noqa: F401,F403
from ._xlbt import __version__  # noqa: F401
