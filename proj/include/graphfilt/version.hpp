#pragma once

#define GRAPHFILT_VERSION "0.1.0"
