"""
duvalcert - 九點組態一般性證書與 Du Val 曲線精確構造
"""

__version__ = "0.1.0"
