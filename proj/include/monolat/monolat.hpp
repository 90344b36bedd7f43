#pragma once

#include "monolat/algebra/amalgam.hpp"
#include "monolat/algebra/checks.hpp"
#include "monolat/algebra/consequence.hpp"
#include "monolat/algebra/finite_algebra.hpp"
#include "monolat/algebra/generators.hpp"
#include "monolat/algebra/io.hpp"
#include "monolat/algebra/modal.hpp"
#include "monolat/algebra/semantics.hpp"
#include "monolat/proof/check.hpp"
#include "monolat/proof/derivation.hpp"
#include "monolat/proof/interpolate.hpp"
#include "monolat/proof/io.hpp"
#include "monolat/proof/rename.hpp"
#include "monolat/proof/search.hpp"
#include "monolat/proof/sequent.hpp"
#include "monolat/proof/soundness.hpp"
#include "monolat/syntax/equation.hpp"
#include "monolat/syntax/formula.hpp"
#include "monolat/syntax/text.hpp"
#include "monolat/syntax/translate.hpp"
