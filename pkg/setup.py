from setuptools import setup, find_namespace_packages

setup(
    name='EptctrBench',
    version='0.1',
    packages=find_namespace_packages(include=['EptctrBench', 'EptctrBench.*']),
    python_requires='>=3.8',
    install_requires=['numpy', 'scipy', 'pandas', 'dacite', 'tqdm'],
)
