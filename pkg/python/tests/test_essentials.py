#!/usr/bin/env python3
"""
Essential functionality tests for the Borel ideal toolkit and its MCP server
Tests the entry points that users depend on.
"""
import unittest
import json
import sys
from pathlib import Path
from unittest.mock import patch
import asyncio

# Add parent directories to path
sys.path.insert(0, str(Path(__file__).parent.parent))
sys.path.insert(0, str(Path(__file__).parent.parent.parent))


class TestEssentialFunctionality(unittest.TestCase):
    """Test essential functionality that users depend on"""

    def test_all_critical_imports_work(self):
        """Test that all critical system imports work - this is the most important test"""
        try:
            # MCP server
            from mcp_borel_ideals import list_tools, call_tool

            # Command-line front end and acceptance runner
            from borel_cli import main, run
            from reproduction import reproduce_all

            # Utilities
            from utils.text_utils import TextUtils
            from utils.file_utils import FileUtils
            from utils.monomial import Monomial
            from utils.run_config import GuardLimits, RunConfig

            # Processors
            from processors.borel import BorelInstance
            from processors.dual import dual_generators
            from processors.sortnet import sort_tuple
            from processors.rees import reduced_gb
            from processors.powers import depth_report
            from processors.oracle import irreducible_decomposition

            # Libraries
            import numpy as np
            from tabulate import tabulate
            from mcp.server import Server
            from mcp.types import Tool, TextContent, CallToolResult

            self.assertTrue(True, "All critical imports successful")

        except ImportError as e:
            self.fail(f"Critical import failed: {e}")

    def test_mcp_lists_one_tool_per_command(self):
        """Every CLI command is exposed as a tool"""
        from mcp_borel_ideals import list_tools
        from borel_cli import COMMANDS

        tools = asyncio.run(list_tools())
        names = {tool.name for tool in tools}
        self.assertEqual(names, {name.replace('-', '_') for name in COMMANDS})
        self.assertIn('scm_check', names)

    def test_mcp_dual_tool_works(self):
        """The dual tool returns the JSON report"""
        from mcp_borel_ideals import call_tool

        result = asyncio.run(call_tool("dual", {"n": 9, "t": 2, "u": "2,4,9"}))
        self.assertFalse(result.isError)
        report = json.loads(result.content[0].text)
        self.assertEqual(report['dual'][0], {'monomial': "x1*x2", 'form': 'F2'})
        self.assertTrue(report['success'])

    def test_mcp_reports_usage_errors(self):
        """An invalid instance is flagged as an error result"""
        from mcp_borel_ideals import call_tool

        result = asyncio.run(call_tool("gens", {"n": 9, "t": 2, "u": [2, 3, 9]}))
        self.assertTrue(result.isError)
        self.assertEqual(json.loads(result.content[0].text)['error_type'], 'InstanceError')

    @patch('mcp_borel_ideals.run')
    def test_mcp_handler_survives_crashes(self, mock_run):
        """Unexpected exceptions become error results"""
        from mcp_borel_ideals import call_tool

        mock_run.side_effect = RuntimeError("boom")
        result = asyncio.run(call_tool("gens", {"n": 4, "t": 2, "u": "2,4"}))
        self.assertTrue(result.isError)
        self.assertIn("boom", result.content[0].text)


class TestLibraryCompatibility(unittest.TestCase):
    """Test that required libraries are available and compatible"""

    def test_numpy(self):
        """numpy rank computations"""
        import numpy as np
        self.assertEqual(int(np.linalg.matrix_rank(np.array([[1, 0], [0, 1], [1, 1]]))), 2)

    def test_tabulate(self):
        from tabulate import tabulate
        self.assertIn("a", tabulate([{'a': 1}], headers="keys"))

    def test_hypothesis(self):
        try:
            import hypothesis
            self.assertTrue(hasattr(hypothesis, 'given'))
        except ImportError as e:
            self.fail(f"hypothesis not available: {e}")


if __name__ == '__main__':
    unittest.main()
