#pragma once

#include "gcorr/error.hpp"
#include "gcorr/report.hpp"
#include "gcorr/groupoid.hpp"
#include "gcorr/base.hpp"
#include "gcorr/correspondence.hpp"
#include "gcorr/pathspace.hpp"
#include "gcorr/islice.hpp"
#include "gcorr/model.hpp"
#include "gcorr/rep.hpp"
#include "gcorr/actions.hpp"
#include "gcorr/document.hpp"
