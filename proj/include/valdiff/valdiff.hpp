/*
   Copyright 2026 The valdiff Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef VALDIFF_VALDIFF_HPP
#define VALDIFF_VALDIFF_HPP

#include "coarsen.hpp"
#include "cuts.hpp"
#include "dhensel.hpp"
#include "diffpoly.hpp"
#include "error.hpp"
#include "monomial.hpp"
#include "ordgroup.hpp"
#include "oracle.hpp"
#include "pretty.hpp"
#include "random.hpp"
#include "rational_function.hpp"
#include "residue.hpp"
#include "series.hpp"

#endif
