#pragma once

namespace selfnorm_cli {

// Exit codes: 0 success/PASS, 1 FAIL verdict, 2 usage error, 3 numerical error.
int run(int argc, char** argv);

}  // namespace selfnorm_cli
