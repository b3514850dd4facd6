#
#   This program is free software: you can redistribute it and/or modify
#   it under the terms of the GNU General Public License as published by
#   the Free Software Foundation, either version 3 of the License, or
#   (at your option) any later version.
#
#   This program is distributed in the hope that it will be useful,
#   but WITHOUT ANY WARRANTY; without even the implied warranty of
#   MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#   GNU General Public License for more details.
#
#   You should have received a copy of the GNU General Public License
#   along with this file. If not, see <http://www.gnu.org/licenses/>.
#
#   Copyright © 2024 The weylcode developers
#
"""Options shared by every weylcode subcommand."""


import argparse

from weylcode._version import VERSION

parser = argparse.ArgumentParser(add_help=False)
parser.add_argument("--version", action="version", version=VERSION)
parser.add_argument(
    "-V",
    "--verbose",
    action="count",
    default=0,
    help="Log progress to stderr, twice for debug output.",
)
