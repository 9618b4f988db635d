import os
import yaml
from dotenv import load_dotenv

load_dotenv()

class Config:
    def __init__(self):
        # Load configuration from YAML file
        self.ROOT_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
        config_path = os.path.join(self.ROOT_DIR, 'config.yaml')
        with open(config_path, 'r') as file:
            self.config = yaml.safe_load(file)

        # Solver settings
        self.STRICT_SUCCESSORS = self.config['solver']['strict_successors']
        self.RETAIN_INNER_TRACES = self.config['solver']['retain_inner_traces']

        # Oracle guards
        self.ENUMERATION_MAX_PRODUCT_VERTICES = self.config['oracle']['enumeration_max_product_vertices']
        self.ENUMERATION_MAX_PROFILES = self.config['oracle']['enumeration_max_profiles']
        self.VERIFY_MAX_PRODUCT_VERTICES = self.config['oracle']['verify_max_product_vertices']

        # Random instance defaults
        self.RANDOM_VERTICES = self.config['random_instances']['vertices']
        self.RANDOM_DFA_STATES = self.config['random_instances']['dfa_states']
        self.RANDOM_WEIGHT_CAP = self.config['random_instances']['weight_cap']
        self.RANDOM_MAX_OUT_DEGREE = self.config['random_instances']['max_out_degree']
        self.RANDOM_COLORS = tuple(self.config['random_instances']['colors'])

        # Output settings
        self.INFINITY_TOKEN = self.config['output']['infinity_token']
        self.TABLE_FORMAT = self.config['output']['table_format']

        # Environment variables
        self.LOG_LEVEL = os.getenv('WLG_LOG_LEVEL') or self.config['logging']['level']
        self.LOG_FORMAT = self.config['logging']['format']

        # Dashboard settings
        self.PAGE_TITLE = self.config['dashboard']['page_title']
        self.DATA_DIR = os.getenv('WLG_DATA_DIR') or os.path.join(self.ROOT_DIR, self.config['dashboard']['data_dir'])

config = Config()
