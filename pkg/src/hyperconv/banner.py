BANNER_ART = r"""
   _                                                
  | |__  _   _ _ __   ___ _ __ ___ ___  _ __ __   __
  | '_ \| | | | '_ \ / _ \ '__/ __/ _ \| '_ \\ \ / /
  | | | | |_| | |_) |  __/ | | (_| (_) | | | |\ V / 
  |_| |_|\__, | .__/ \___|_|  \___\___/|_| |_| \_/  
         |___/|_|        λ : 𝔽X → [0,∞]^X            
"""

BLUE = "\033[38;5;39m"
RESET = "\033[0m"


def print_banner() -> None:
    """Imprime o logo ASCII do hyperconv em azul."""
    print(BLUE + BANNER_ART + RESET)
