"""
Shared pytest setup: import path and hypothesis profiles.

Select a profile with HYPOTHESIS_PROFILE=ci (more examples, no deadline).
"""

import os
import sys

from hypothesis import HealthCheck, settings

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

settings.register_profile('dev', max_examples=50, deadline=None)
settings.register_profile(
    'ci', max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get('HYPOTHESIS_PROFILE', 'dev'))
